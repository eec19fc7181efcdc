//! Exact arithmetic kernels: integer Laurent polynomials, F₂[t] polynomials,
//! and reduction of graded monomial matrices.
//!
//! The workhorse is [`graded_reduce`]: a boundary matrix whose entries are
//! forced monomials tᵉ by a grading law decomposes, through iterated pair
//! cancellation, into a free module plus cyclic torsion summands F₂[t]/(tᵏ).
//! That is the structure theorem for finitely generated graded modules over
//! F₂[t] made algorithmic, and every homology computation in this crate
//! bottoms out here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Monomial exponent.
pub type Exp = u32;

// ---------------------------------------------------------------------------
// Integer Laurent polynomials
// ---------------------------------------------------------------------------

/// Integer Laurent polynomial in one variable t, stored as exponent →
/// coefficient with no zero coefficients kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntLaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    /// The divisor does not divide the dividend in ℤ[t, t⁻¹].
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
}

impl IntLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    /// Build from (exponent, coefficient) pairs; repeated exponents
    /// accumulate and zero totals are dropped.
    pub fn from_coeffs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in pairs {
            let entry = coeffs.entry(e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                coeffs.remove(&e);
            }
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coeffs(self.terms().chain(other.terms()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_coeffs(self.terms().chain(other.terms().map(|(e, c)| (e, -c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let entry = acc.entry(e1 + e2).or_insert(0);
                *entry += c1 * c2;
            }
        }
        acc.retain(|_, c| *c != 0);
        Self { coeffs: acc }
    }

    /// Multiply by t^k.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Exact quotient `self / q` in ℤ[t, t⁻¹].
    ///
    /// Long division from the top exponent down; fails if a leading
    /// coefficient does not divide or the remainder never vanishes.
    pub fn exact_div(&self, q: &Self) -> Result<Self, PolyError> {
        if q.is_zero() {
            return Err(PolyError::NonExactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let qe = q.max_exp().unwrap();
        let qc = q.coeff(qe);
        // In an exact quotient the lowest exponent is pinned to this value,
        // so any candidate term below it proves the division inexact.
        let min_quot_exp = self.min_exp().unwrap() - q.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let re = rem.max_exp().unwrap();
            let rc = rem.coeff(re);
            if rc % qc != 0 || re - qe < min_quot_exp {
                return Err(PolyError::NonExactDivision(format!(
                    "remainder has leading term {}·t^{}",
                    rc, re
                )));
            }
            let term = Self::monomial(re - qe, rc / qc);
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(q));
        }
        Ok(quot)
    }

    /// Whether p(t) = p(1/t).
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }
}

impl fmt::Display for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{}", m)?,
                (1, 1) => write!(f, "t")?,
                (1, e) => write!(f, "t^{}", e)?,
                (m, 1) => write!(f, "{}t", m)?,
                (m, e) => write!(f, "{}t^{}", m, e)?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// F₂[t] polynomials
// ---------------------------------------------------------------------------

/// Polynomial over F₂ in one variable, stored as the set of exponents with
/// coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf2Poly {
    terms: BTreeSet<Exp>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(e: Exp) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(e);
        Self { terms }
    }

    /// Build from exponents; repeated exponents cancel pairwise.
    pub fn from_exps<I: IntoIterator<Item = Exp>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.toggle(e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(e) iff the polynomial is the single monomial tᵉ.
    pub fn as_monomial(&self) -> Option<Exp> {
        if self.terms.len() == 1 {
            self.terms.first().copied()
        } else {
            None
        }
    }

    pub fn toggle(&mut self, e: Exp) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for &e in &other.terms {
            self.toggle(e);
        }
    }

    /// Multiply by tᵏ.
    pub fn shifted(&self, k: Exp) -> Self {
        Self {
            terms: self.terms.iter().map(|&e| e + k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for &e1 in &self.terms {
            for &e2 in &other.terms {
                p.toggle(e1 + e2);
            }
        }
        p
    }

    /// Reduction mod tᵏ: keep exponents < k.
    pub fn rem_mod(&self, k: Exp) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|&e| e < k).collect(),
        }
    }

    pub fn degree(&self) -> Option<Exp> {
        self.terms.last().copied()
    }

    pub fn exps(&self) -> impl Iterator<Item = Exp> + '_ {
        self.terms.iter().copied()
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, e) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "t")?,
                e => write!(f, "t^{}", e)?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Graded monomial matrices
// ---------------------------------------------------------------------------

/// Square boundary matrix over F₂[t] whose entries are single monomials tᵉ,
/// constrained by a grading law
///
/// ```text
/// grade(col) = grade(row) + scale·e + shift
/// ```
///
/// for the matrix's declared (scale, shift). Entry (row, col) = e means the
/// differential of basis vector `col` contains tᵉ·`row`. The law pins the
/// exponent of any entry to its position, which keeps Gaussian elimination
/// monomial: a fill-in landing on an occupied slot always carries the same
/// exponent and cancels mod 2 instead of widening to a general polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMonoMatrix {
    grades: Vec<i64>,
    scale: i64,
    shift: i64,
    cols: Vec<BTreeMap<usize, Exp>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("grading scale must be nonzero")]
    ZeroScale,
    #[error("entry ({row}, {col}) out of range for {n} generators")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("diagonal entry at generator {0}")]
    DiagonalEntry(usize),
    #[error(
        "entry ({row}, {col}) with exponent {e} violates the grade law: \
         {col_grade} != {row_grade} + {scale}*{e} + {shift}"
    )]
    GradeLaw {
        row: usize,
        col: usize,
        e: Exp,
        row_grade: i64,
        col_grade: i64,
        scale: i64,
        shift: i64,
    },
}

impl GradedMonoMatrix {
    /// Validates indices, the no-diagonal rule, and the grade law for every
    /// entry. A repeated (row, col) pair cancels mod 2; the law guarantees a
    /// repeat can only carry the same exponent.
    pub fn new(
        grades: Vec<i64>,
        scale: i64,
        shift: i64,
        entries: impl IntoIterator<Item = ((usize, usize), Exp)>,
    ) -> Result<Self, MatrixError> {
        if scale == 0 {
            return Err(MatrixError::ZeroScale);
        }
        let n = grades.len();
        let mut cols: Vec<BTreeMap<usize, Exp>> = vec![BTreeMap::new(); n];
        for ((row, col), e) in entries {
            if row >= n || col >= n {
                return Err(MatrixError::IndexOutOfRange { row, col, n });
            }
            if row == col {
                return Err(MatrixError::DiagonalEntry(row));
            }
            if grades[col] != grades[row] + scale * i64::from(e) + shift {
                return Err(MatrixError::GradeLaw {
                    row,
                    col,
                    e,
                    row_grade: grades[row],
                    col_grade: grades[col],
                    scale,
                    shift,
                });
            }
            match cols[col].remove(&row) {
                Some(prev) => debug_assert_eq!(prev, e, "law pins the exponent per slot"),
                None => {
                    cols[col].insert(row, e);
                }
            }
        }
        Ok(Self {
            grades,
            scale,
            shift,
            cols,
        })
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> &[i64] {
        &self.grades
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<Exp> {
        self.cols[col].get(&row).copied()
    }

    /// All entries as (row, col, exponent), column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Exp)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, &e)| (r, c, e)))
    }

    /// First position where d∘d fails to vanish, if any.
    fn compose_defect(&self) -> Option<(usize, usize)> {
        let mut acc: BTreeMap<(usize, usize), Gf2Poly> = BTreeMap::new();
        for (c, col) in self.cols.iter().enumerate() {
            for (&mid, &e1) in col {
                for (&r, &e2) in &self.cols[mid] {
                    acc.entry((r, c)).or_default().toggle(e1 + e2);
                }
            }
        }
        acc.into_iter()
            .find(|(_, p)| !p.is_zero())
            .map(|((r, c), _)| (r, c))
    }
}

// ---------------------------------------------------------------------------
// Graded reduction
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("matrix does not square to zero: d² has a term at (row {row}, col {col})")]
    NotAComplex { row: usize, col: usize },
    /// The grading law admitted a diagonal fill-in. Matrices built from
    /// bigraded chain complexes can never reach this (the mod-2 homological
    /// grading of any such matrix forbids it); it guards exotic
    /// (scale, shift) choices fed in directly.
    #[error("reduction produced a diagonal entry at generator {0}")]
    DiagonalFillIn(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpressError {
    #[error("vector has {got} coordinates, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("vector is not a cycle: it has a component on the pair source at slot {slot}")]
    NotACycle { slot: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SlotKind {
    Free,
    /// Source x of a cancelled pair d(x) = tᵉ·y.
    PairSource,
    /// Target of a pair with e = 0; its class is a boundary.
    AcyclicTarget,
    /// Target of a pair with e > 0: a torsion class of order e.
    TorsionTarget,
}

/// A homology class in the coordinates of a [`ModuleDecomp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCoords {
    /// Coefficient on each free class, in `free_classes()` order.
    pub free: Vec<Gf2Poly>,
    /// Coefficient on each torsion class, reduced mod t^order.
    pub torsion: Vec<Gf2Poly>,
}

impl HomologyCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Gf2Poly::is_zero) && self.torsion.iter().all(Gf2Poly::is_zero)
    }
}

/// Decomposition of the homology of a graded monomial matrix: a free module
/// of rank `free_rank()` plus one cyclic summand F₂[t]/(tᵏ) per entry of
/// `torsion_orders()`, together with enough change-of-basis data to express
/// arbitrary cycles in these classes ([`ModuleDecomp::express`]).
#[derive(Clone, Debug)]
pub struct ModuleDecomp {
    n: usize,
    kinds: Vec<SlotKind>,
    orders: Vec<Exp>,
    free_slots: Vec<usize>,
    torsion_slots: Vec<usize>,
    /// Original basis vector i = Σ_slot expand[i][slot] · (final basis at slot).
    expand: Vec<BTreeMap<usize, Gf2Poly>>,
    /// Final basis vector at slot, written in original coordinates.
    basis: Vec<Vec<Gf2Poly>>,
}

impl ModuleDecomp {
    /// Number of generators of the underlying matrix.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn free_rank(&self) -> usize {
        self.free_slots.len()
    }

    /// Torsion orders in final-basis slot order.
    pub fn torsion_orders(&self) -> Vec<Exp> {
        self.torsion_slots.iter().map(|&s| self.orders[s]).collect()
    }

    /// Cycle representatives of the free classes, in original coordinates.
    pub fn free_classes(&self) -> Vec<Vec<Gf2Poly>> {
        self.free_slots.iter().map(|&s| self.basis[s].clone()).collect()
    }

    /// Cycle representatives of the torsion classes with their orders.
    pub fn torsion_classes(&self) -> Vec<(Vec<Gf2Poly>, Exp)> {
        self.torsion_slots
            .iter()
            .map(|&s| (self.basis[s].clone(), self.orders[s]))
            .collect()
    }

    /// Express a cycle in homology coordinates.
    ///
    /// Round-trip contract: a stored class representative comes back as the
    /// corresponding unit coordinate; a boundary comes back all-zero.
    pub fn express(&self, z: &[Gf2Poly]) -> Result<HomologyCoords, ExpressError> {
        if z.len() != self.n {
            return Err(ExpressError::WrongLength {
                got: z.len(),
                expected: self.n,
            });
        }
        let mut acc: BTreeMap<usize, Gf2Poly> = BTreeMap::new();
        for (i, zi) in z.iter().enumerate() {
            if zi.is_zero() {
                continue;
            }
            for (&slot, p) in &self.expand[i] {
                let term = zi.mul(p);
                let entry = acc.entry(slot).or_default();
                entry.add_assign(&term);
            }
        }
        for (&slot, p) in &acc {
            if self.kinds[slot] == SlotKind::PairSource && !p.is_zero() {
                return Err(ExpressError::NotACycle { slot });
            }
        }
        let free = self
            .free_slots
            .iter()
            .map(|s| acc.get(s).cloned().unwrap_or_default())
            .collect();
        let torsion = self
            .torsion_slots
            .iter()
            .map(|s| {
                acc.get(s)
                    .map(|p| p.rem_mod(self.orders[*s]))
                    .unwrap_or_default()
            })
            .collect();
        Ok(HomologyCoords { free, torsion })
    }

    /// Dimension over F₂ that the homology of `matrix ⊗ F₂[t]/(tᴺ)` must
    /// have according to this decomposition: N per free class plus
    /// 2·min(order, N) per torsion class. Cross-check against
    /// [`truncated_homology_dim`].
    pub fn truncated_dim(&self, n_trunc: Exp) -> usize {
        let free = self.free_rank() * n_trunc as usize;
        let torsion: usize = self
            .torsion_orders()
            .iter()
            .map(|&k| 2 * k.min(n_trunc) as usize)
            .sum();
        free + torsion
    }
}

struct Reducer {
    cols: Vec<BTreeMap<usize, Exp>>,
    rows: Vec<BTreeMap<usize, Exp>>,
    alive: Vec<bool>,
    kinds: Vec<SlotKind>,
    orders: Vec<Exp>,
    expand: Vec<BTreeMap<usize, Gf2Poly>>,
    basis: Vec<Vec<Gf2Poly>>,
}

impl Reducer {
    fn new(m: &GradedMonoMatrix) -> Self {
        let n = m.len();
        let mut rows: Vec<BTreeMap<usize, Exp>> = vec![BTreeMap::new(); n];
        for (r, c, e) in m.entries() {
            rows[r].insert(c, e);
        }
        let expand = (0..n)
            .map(|i| {
                let mut map = BTreeMap::new();
                map.insert(i, Gf2Poly::one());
                map
            })
            .collect();
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![Gf2Poly::zero(); n];
                v[i] = Gf2Poly::one();
                v
            })
            .collect();
        Self {
            cols: m.cols.clone(),
            rows,
            alive: vec![true; n],
            kinds: vec![SlotKind::Free; n],
            orders: vec![0; n],
            expand,
            basis,
        }
    }

    fn toggle(&mut self, row: usize, col: usize, e: Exp) -> Result<(), ReduceError> {
        if row == col {
            return Err(ReduceError::DiagonalFillIn(row));
        }
        match self.cols[col].remove(&row) {
            Some(prev) => {
                debug_assert_eq!(prev, e, "grade law pins the exponent per slot");
                self.rows[row].remove(&col);
            }
            None => {
                self.cols[col].insert(row, e);
                self.rows[row].insert(col, e);
            }
        }
        Ok(())
    }

    /// Entry with the smallest exponent, tie-broken by (col, row).
    fn pivot(&self) -> Option<(usize, usize, Exp)> {
        let mut best: Option<(Exp, usize, usize)> = None;
        for (c, col) in self.cols.iter().enumerate() {
            for (&r, &e) in col {
                let key = (e, c, r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(e, c, r)| (c, r, e))
    }

    /// Change of basis `new[z] = old[z] + tᵏ·old[x]` applied to the matrix
    /// (column side and target-rewrite side) and to the bookkeeping.
    fn add_column(&mut self, z: usize, x: usize, k: Exp) -> Result<(), ReduceError> {
        debug_assert!(z != x);
        // d(z̃) = d(z) + tᵏ d(x)
        for (r, e) in self.cols[x].clone() {
            self.toggle(r, z, e + k)?;
        }
        // Rewriting targets: old z = z̃ + tᵏ x, so every entry (v → z, h)
        // also hits x as (v → x, h + k).
        for (v, h) in self.rows[z].clone() {
            self.toggle(x, v, h + k)?;
        }
        // Original vectors referencing slot z pick up ·tᵏ on slot x.
        for i in 0..self.expand.len() {
            if let Some(coeff) = self.expand[i].get(&z).cloned() {
                let entry = self.expand[i].entry(x).or_default();
                entry.add_assign(&coeff.shifted(k));
            }
        }
        let add = self.basis[x].clone();
        for (dst, src) in self.basis[z].iter_mut().zip(add) {
            dst.add_assign(&src.shifted(k));
        }
        Ok(())
    }

    fn cancel(&mut self, x: usize, y: usize, e: Exp) -> Result<(), ReduceError> {
        // Step 1: clear row y with column additions into x. The pivot holds
        // the minimal exponent, so every quotient f − e stays non-negative.
        while let Some((&z, &f)) = self.rows[y].iter().find(|&(&c, _)| c != x) {
            debug_assert!(f >= e, "pivot exponent is globally minimal");
            self.add_column(z, x, f - e)?;
            debug_assert!(!self.rows[y].contains_key(&z), "column addition clears the slot");
        }
        // d² = 0 forces the source row empty once y is cleared: anything
        // still mapping to x would give d² a term at ỹ.
        assert!(
            self.rows[x].is_empty(),
            "row of a pivot source must clear itself"
        );
        // Step 2: absorb the rest of column x into y, making d(x) = tᵉ·ỹ.
        let gs: Vec<(usize, Exp)> = self
            .cols[x]
            .iter()
            .filter(|&(&g, _)| g != y)
            .map(|(&g, &eg)| (g, eg))
            .collect();
        for &(g, eg) in &gs {
            debug_assert!(eg >= e);
            let k = eg - e;
            // col[ỹ] = col[y] + tᵏ·col[g]
            for (r, e2) in self.cols[g].clone() {
                self.toggle(r, y, e2 + k)?;
            }
            // old y = ỹ + Σ tᵏ·g: entries into y rewrite onto the g's. After
            // step 1 only the pivot maps to y, and its rewrite exactly
            // cancels the (x → g) entries.
            self.toggle(g, x, eg)?;
            for i in 0..self.expand.len() {
                if let Some(coeff) = self.expand[i].get(&y).cloned() {
                    let entry = self.expand[i].entry(g).or_default();
                    entry.add_assign(&coeff.shifted(k));
                }
            }
            let add = self.basis[g].clone();
            for (dst, src) in self.basis[y].iter_mut().zip(add) {
                dst.add_assign(&src.shifted(k));
            }
        }
        assert!(
            self.cols[y].is_empty(),
            "d(ỹ) = 0 is forced by d² = 0; the column must cancel to nothing"
        );
        assert_eq!(
            self.cols[x].len(),
            1,
            "pivot column must reduce to the single entry tᵉ·ỹ"
        );
        // Retire the pair.
        self.cols[x].clear();
        self.rows[y].clear();
        self.alive[x] = false;
        self.alive[y] = false;
        self.kinds[x] = SlotKind::PairSource;
        self.kinds[y] = if e == 0 {
            SlotKind::AcyclicTarget
        } else {
            SlotKind::TorsionTarget
        };
        self.orders[x] = e;
        self.orders[y] = e;
        Ok(())
    }
}

/// Decompose the homology of a boundary matrix over F₂[t] by iterated pair
/// cancellation.
///
/// Deterministic for a fixed input ordering: the pivot is always the entry
/// with the globally smallest exponent, tie-broken by (column, row). The
/// resulting (rank, torsion-order multiset) is invariant under simultaneous
/// row/column permutation of the input.
pub fn graded_reduce(m: &GradedMonoMatrix) -> Result<ModuleDecomp, ReduceError> {
    if let Some((row, col)) = m.compose_defect() {
        return Err(ReduceError::NotAComplex { row, col });
    }
    let mut red = Reducer::new(m);
    while let Some((x, y, e)) = red.pivot() {
        red.cancel(x, y, e)?;
    }
    let n = m.len();
    let free_slots: Vec<usize> = (0..n).filter(|&i| red.alive[i]).collect();
    for &s in &free_slots {
        debug_assert!(red.cols[s].is_empty() && red.rows[s].is_empty());
    }
    let torsion_slots: Vec<usize> = (0..n)
        .filter(|&i| red.kinds[i] == SlotKind::TorsionTarget)
        .collect();
    Ok(ModuleDecomp {
        n,
        kinds: red.kinds,
        orders: red.orders,
        free_slots,
        torsion_slots,
        expand: red.expand,
        basis: red.basis,
    })
}

// ---------------------------------------------------------------------------
// Truncated-coefficient cross-check
// ---------------------------------------------------------------------------

/// Dimension over F₂ of the homology of `m ⊗ F₂[t]/(tᴺ)`, computed by plain
/// Gaussian elimination with no reference to the graded reduction. Agreement
/// with [`ModuleDecomp::truncated_dim`] for every N certifies a
/// decomposition; production code paths never truncate.
pub fn truncated_homology_dim(m: &GradedMonoMatrix, n_trunc: Exp) -> usize {
    let n = m.len();
    let nt = n_trunc as usize;
    let dim = n * nt;
    // Basis (generator g, power j) ↦ index g·N + j; d(c ⊗ tʲ) = r ⊗ tʲ⁺ᵉ,
    // truncated away when j + e ≥ N.
    let mut cols: BTreeMap<(usize, usize), Vec<bool>> = BTreeMap::new();
    for (r, c, e) in m.entries() {
        let e = e as usize;
        for j in 0..nt.saturating_sub(e) {
            let v = cols.entry((c, j)).or_insert_with(|| vec![false; dim]);
            v[r * nt + j + e] ^= true;
        }
    }
    let rank = gf2_rank(cols.into_values().collect(), dim);
    dim - 2 * rank
}

fn gf2_rank(columns: Vec<Vec<bool>>, dim: usize) -> usize {
    let mut pivots: Vec<(usize, Vec<bool>)> = Vec::new();
    for mut col in columns {
        while let Some(lead) = col.iter().position(|&b| b) {
            if let Some((_, p)) = pivots.iter().find(|(l, _)| *l == lead) {
                let p = p.clone();
                for (a, b) in col.iter_mut().zip(p) {
                    *a ^= b;
                }
            } else {
                pivots.push((lead, col));
                break;
            }
        }
    }
    debug_assert!(pivots.len() <= dim);
    pivots.len()
}
