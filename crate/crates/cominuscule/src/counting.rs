//! Enumeration of Le-diagrams: q-polynomial recurrences, closed forms, and
//! the brute-force censuses that validate them.
//!
//! All arithmetic is exact (arbitrary-precision integers); every recurrence
//! or closed form exposed here is checked against an independent exhaustive
//! census at desk scale in the test suite.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagram::{bruhat_interval_below, Filling, OPlusDiagram};
use crate::poset::{CominusculePoset, OrderIdeal};
use crate::weyl::Family;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// A polynomial in one variable `q` with arbitrary-precision integer
/// coefficients, stored in ascending degree with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    /// Normalising constructor.
    pub fn new(mut coeffs: Vec<BigInt>) -> QPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> QPolynomial {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> QPolynomial {
        QPolynomial::from_ints(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c · q^d`.
    pub fn monomial(c: i64, d: usize) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::from(c);
        QPolynomial::new(coeffs)
    }

    /// The q-integer `[m] = 1 + q + … + q^{m-1}`.
    pub fn gauss(m: usize) -> QPolynomial {
        QPolynomial {
            coeffs: vec![BigInt::one(); m],
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluation at `q = 1`: the plain count.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Evaluation at an arbitrary integer point.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Formal derivative `d/dq`.
    pub fn derivative(&self) -> QPolynomial {
        if self.coeffs.len() <= 1 {
            return QPolynomial::zero();
        }
        QPolynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigInt::from(k + 1))
                .collect(),
        )
    }

    /// Exact division by an integer; panics if any coefficient is not
    /// divisible.
    pub fn div_exact(&self, k: u64) -> QPolynomial {
        let k = BigInt::from(k);
        QPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| {
                    assert!((c % &k).is_zero(), "non-exact division of {c} by {k}");
                    c / &k
                })
                .collect(),
        )
    }
}

impl std::ops::Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        QPolynomial::new(coeffs)
    }
}

impl std::ops::Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        QPolynomial::new(coeffs)
    }
}

impl std::ops::Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::new(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    /// Canonical ascending form, e.g. `1+2q+2q^2+q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit = abs.is_one();
            match (d, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}q")?,
                (_, true) => write!(f, "q^{d}")?,
                (_, false) => write!(f, "{abs}q^{d}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial in two variables `x`, `y` with arbitrary-precision integer
/// coefficients and finite support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XYPolynomial {
    /// `(x degree, y degree) -> coefficient`, zero coefficients pruned.
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl XYPolynomial {
    pub fn zero() -> XYPolynomial {
        XYPolynomial::default()
    }

    pub fn constant(c: i64) -> XYPolynomial {
        let mut p = XYPolynomial::zero();
        p.add_term(0, 0, BigInt::from(c));
        p
    }

    /// Add `c · x^a y^b` in place.
    pub fn add_term(&mut self, a: usize, b: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.terms
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * x.pow(a as u32) * y.pow(b as u32);
        }
        acc
    }
}

impl std::ops::Add for &XYPolynomial {
    type Output = XYPolynomial;
    fn add(self, rhs: &XYPolynomial) -> XYPolynomial {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl std::ops::Mul for &XYPolynomial {
    type Output = XYPolynomial;
    fn mul(self, rhs: &XYPolynomial) -> XYPolynomial {
        let mut out = XYPolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for XYPolynomial {
    /// Canonical ascending form ordered by (x degree, y degree), e.g.
    /// `1+2y+y^2+x+2xy+xy^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            let abs = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if !abs.is_one() || (a == 0 && b == 0) {
                write!(f, "{abs}")?;
            }
            match a {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{b}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Closed forms and recurrences
// ---------------------------------------------------------------------------

/// q-count of maximal `(B_n, 1)` Le-diagrams graded by the number of `+`s.
///
/// Initial values `1`, `[2]`, `1+2q+2q²+q³`, then the recurrence
/// `(1+q)² bhat_{n-1} - (1+q) q² bhat_{n-2}` for `n ≥ 3` (the recurrence does
/// not reach back to `n = 2`, whose value is special).  At `q = 1` the
/// sequence runs 1, 2, 6, 20, 68, … (A006012); ground truth is the census,
/// not the sequence table.
pub fn bhat_q(n: usize) -> QPolynomial {
    let two = QPolynomial::gauss(2); // 1 + q
    match n {
        0 => QPolynomial::one(),
        1 => two,
        2 => QPolynomial::from_ints(&[1, 2, 2, 1]),
        _ => {
            let mut prev = bhat_q(1);
            let mut cur = bhat_q(2);
            let lead = &two * &two;
            let tail = &two * &QPolynomial::monomial(1, 2);
            for _ in 3..=n {
                let next = &(&lead * &cur) - &(&tail * &prev);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// q-count of maximal `(D_n, 1)` Le-diagrams graded by the number of `+`s.
///
/// Initial values `1`, `[2]`, `[2]²`, `[2]⁴ - q²[2]`, then the same
/// recurrence as [`bhat_q`] for `n ≥ 4`.  At `q = 1` this gives
/// 4, 14, 48, 164, … from `n = 2` (A007070); ground truth is the census.
pub fn dhat_q(n: usize) -> QPolynomial {
    let two = QPolynomial::gauss(2);
    match n {
        0 => QPolynomial::one(),
        1 => two,
        2 => &two * &two,
        3 => {
            let two2 = &two * &two;
            &(&two2 * &two2) - &(&QPolynomial::monomial(1, 2) * &two)
        }
        _ => {
            let mut prev = dhat_q(2);
            let mut cur = dhat_q(3);
            let lead = &two * &two;
            let tail = &two * &QPolynomial::monomial(1, 2);
            for _ in 4..=n {
                let next = &(&lead * &cur) - &(&tail * &prev);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Total number of `(B_n, n)` Le-diagrams over all shapes — equivalently the
/// number of decorated signed permutations of `[n]`.
///
/// Recurrence `B(n+1) = 2(n+1)B(n) + 1` with `B(0) = 1`; the values run
/// 1, 3, 13, 79, 633, … (A010844).
pub fn big_b(n: usize) -> BigInt {
    let mut b = BigInt::one();
    for k in 1..=n {
        b = BigInt::from(2 * k as u64) * b + 1;
    }
    b
}

/// Two-variable count of shifted permutation tableaux of ambient size `n`:
/// the closed form `(y+1)^n (x+1)(x+2)⋯(x+n-1)`.
///
/// `x` tracks one less than the number of unrestricted rows (all `n` rows
/// counted, empty rows unrestricted) and `y` the number of `+`s on the
/// diagonal; at `x = y = 1` there are `2^n n!` tableaux.
pub fn t_poly(n: usize) -> XYPolynomial {
    assert!(n >= 1, "the tableau polynomial needs n >= 1");
    let mut y1 = XYPolynomial::constant(1);
    y1.add_term(0, 1, BigInt::one());
    let mut out = XYPolynomial::constant(1);
    for _ in 0..n {
        out = &out * &y1;
    }
    for m in 1..n {
        let mut factor = XYPolynomial::constant(m as i64);
        factor.add_term(1, 0, BigInt::one());
        out = &out * &factor;
    }
    out
}

/// q-count of maximal `(B_n, n)` Le-diagrams graded by the number of `+`s.
///
/// `b(0) = 1` and, for `n ≥ 1`,
/// `b(n) = [n+1] b(n-1) + q² Σ_{i=1}^{n-2} ([n-1]^{(i)} / i!) b(n-i-1)`,
/// where `[m]^{(i)}` is the `i`-th formal q-derivative of the q-integer
/// (the division by `i!` is exact).  At `q = 1` this is twice the number of
/// preference functions of length `n`: 2, 6, 26, 150, … (A000629).
pub fn b_staircase_q(n: usize) -> QPolynomial {
    let mut table = vec![QPolynomial::one()];
    for m in 1..=n {
        let mut next = &QPolynomial::gauss(m + 1) * &table[m - 1];
        if m >= 3 {
            let mut sum = QPolynomial::zero();
            let mut factorial = 1u64;
            let mut derived = QPolynomial::gauss(m - 1);
            for i in 1..=m - 2 {
                factorial *= i as u64;
                derived = derived.derivative();
                sum = &sum + &(&derived.div_exact(factorial) * &table[m - i - 1]);
            }
            next = &next + &(&QPolynomial::monomial(1, 2) * &sum);
        }
        table.push(next);
    }
    table.pop().unwrap()
}

/// Number of preference functions of length `n` (ranking outcomes of `n`
/// candidates with ties): `a(0) = 1`, `a(n) = Σ_{k=1}^{n} C(n,k) a(n-k)`.
pub fn fubini(n: usize) -> BigInt {
    // Pascal's triangle up to row n.
    let mut binom = vec![vec![BigInt::one()]];
    for r in 1..=n {
        let prev = &binom[r - 1];
        let mut row = vec![BigInt::one()];
        for k in 1..r {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::one());
        binom.push(row);
    }
    let mut a = vec![BigInt::one()];
    for m in 1..=n {
        let mut total = BigInt::zero();
        for k in 1..=m {
            total += &binom[m][k] * &a[m - k];
        }
        a.push(total);
    }
    a.pop().unwrap()
}

// ---------------------------------------------------------------------------
// Brute-force censuses
// ---------------------------------------------------------------------------

/// Which shapes a census runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Only the maximal order ideal (the full shape).
    Maximal,
    /// Every order ideal of the poset.
    AllShapes,
}

/// How census results are graded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// Coefficient of `q^k` counts Le-diagrams with exactly `k` `+`s.
    ByPlus,
    /// A single plain count (degree-zero polynomial).
    Plain,
}

/// Default cap on the total number of fillings a census may sweep.
pub const DEFAULT_CENSUS_CAP: u128 = 1 << 30;

/// q-count of the Le-diagrams on one order ideal, graded by the number of
/// `+`s, by exhaustive sweep of all fillings against the PDS definition.
pub fn le_census_q(ideal: &OrderIdeal) -> QPolynomial {
    let positions = ideal.present();
    let size = positions.len();
    assert!(size < 64, "ideal too large for a mask sweep");
    let counts = (0u64..1 << size)
        .into_par_iter()
        .fold(
            || vec![0u64; size + 1],
            |mut acc, local| {
                let mut mask = 0u64;
                for (k, &p) in positions.iter().enumerate() {
                    mask |= (local >> k & 1) << p;
                }
                let d = OPlusDiagram::new(ideal.clone(), mask).unwrap();
                if d.is_pds() {
                    acc[local.count_ones() as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; size + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    QPolynomial::new(counts.into_iter().map(BigInt::from).collect())
}

/// The rank polynomial `Σ_{x ≤ w} q^{ℓ(w) - ℓ(x)}` of the lower Bruhat
/// interval of the ideal's Weyl element — the independent oracle for
/// [`le_census_q`] (each cell `(x, w)` has dimension `ℓ(w) - ℓ(x)`).
pub fn bruhat_rank_poly(ideal: &OrderIdeal) -> QPolynomial {
    let lw = ideal.size();
    let mut coeffs = vec![BigInt::zero(); lw + 1];
    for x in bruhat_interval_below(ideal) {
        coeffs[lw - x.length()] += 1;
    }
    QPolynomial::new(coeffs)
}

/// Exhaustive graded census of Le-diagrams for a cominuscule pair, the
/// universal brute-force oracle behind every counting formula.
pub fn census(
    family: Family,
    n: usize,
    j: usize,
    scope: Scope,
    grading: Grading,
) -> Result<QPolynomial> {
    census_capped(family, n, j, scope, grading, DEFAULT_CENSUS_CAP)
}

/// [`census`] with an explicit cap on the total number of fillings.
pub fn census_capped(
    family: Family,
    n: usize,
    j: usize,
    scope: Scope,
    grading: Grading,
    cap: u128,
) -> Result<QPolynomial> {
    let poset = CominusculePoset::new(family, n, j)?;
    let ideals: Vec<OrderIdeal> = match scope {
        Scope::Maximal => vec![poset.maximal_ideal()],
        Scope::AllShapes => poset.ideals(),
    };
    let mut total: u128 = 0;
    for ideal in &ideals {
        total = total.saturating_add(1u128.checked_shl(ideal.size() as u32).unwrap_or(u128::MAX));
    }
    if total > cap {
        return Err(Error::TooLarge(format!(
            "census would sweep {total} fillings, above the cap of {cap}"
        )));
    }
    let mut acc = QPolynomial::zero();
    for ideal in &ideals {
        acc = &acc + &le_census_q(ideal);
    }
    Ok(match grading {
        Grading::ByPlus => acc,
        Grading::Plain => QPolynomial::new(vec![acc.eval_one()]),
    })
}

/// Two-variable census of shifted permutation tableaux of ambient size `n`:
/// sweep all `(B_n, n)` shapes and fillings, keep those in which every
/// nonempty column has a `+`, and classify rows.
///
/// A `0` is restricted if it sits on the diagonal (the box `(r, n+1-r)`) or
/// has a `+` below it in its column; a row with no restricted `0` (in
/// particular an empty row) is unrestricted.  Weight:
/// `x^{unrestricted - 1} y^{diagonal +s}`.
pub fn t_census(n: usize) -> Result<XYPolynomial> {
    let poset = CominusculePoset::new(Family::B, n, n)?;
    let mut out = XYPolynomial::zero();
    for ideal in poset.ideals() {
        let positions = ideal.present();
        let size = positions.len();
        for local in 0u64..1 << size {
            let mut mask = 0u64;
            for (k, &p) in positions.iter().enumerate() {
                mask |= (local >> k & 1) << p;
            }
            let d = OPlusDiagram::new(ideal.clone(), mask)?;
            if !crate::decorated::is_permutation_tableau_b(&d)? {
                continue;
            }
            let plus_at =
                |r: usize, c: usize| d.filling_at(r, c) == Some(Filling::Plus);
            let restricted_zero = |r: usize, c: usize| {
                d.filling_at(r, c) == Some(Filling::Zero)
                    && (c == n + 1 - r || (r + 1..=n).any(|rr| plus_at(rr, c)))
            };
            let unrestricted = (1..=n)
                .filter(|&r| !(1..=n + 1 - r).any(|c| restricted_zero(r, c)))
                .count();
            assert!(unrestricted >= 1, "every tableau has an unrestricted row");
            let diag_plus = (1..=n).filter(|&r| plus_at(r, n + 1 - r)).count();
            out.add_term(unrestricted - 1, diag_plus, BigInt::one());
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
