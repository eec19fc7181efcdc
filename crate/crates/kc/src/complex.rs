//! Bigraded chain complexes over A = F₂[u,w].
//!
//! A [`KnotComplex`] is a finite free A-module with a distinguished generator
//! basis, each generator carrying a Maslov and an Alexander grading, and a
//! differential given by arrows x → y with monomial coefficient uᵃwᵇ.
//! Homogeneity pins the monomial to the gradings of its endpoints:
//!
//! ```text
//! A(x) = A(y) − a + b        μ(x) = μ(y) − 2a + 1
//! ```
//!
//! Everything downstream — slices, specializations, homology — is obtained by
//! collapsing the two variables into one and handing the result to
//! [`crate::polyalg::graded_reduce`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::polyalg::{Exp, GradedMonoMatrix};

/// Monomial uᵃwᵇ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub a: Exp,
    pub b: Exp,
}

impl Monomial {
    pub fn new(a: Exp, b: Exp) -> Self {
        Self { a, b }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Self {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    pub fn is_unit(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write!(f, "u^{}", a),
            (0, b) => write!(f, "w^{}", b),
            (a, b) => write!(f, "u^{}w^{}", a, b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bigrading {
    pub maslov: i64,
    pub alexander: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub grading: Bigrading,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no generators")]
    EmptyComplex,
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("self-loop at generator {0:?}")]
    SelfLoop(String),
    #[error("arrow {from:?} → {to:?} with {monomial} is not grading-homogeneous")]
    InhomogeneousArrow {
        from: String,
        to: String,
        monomial: Monomial,
    },
    #[error("d² ≠ 0: composite from {from:?} to {to:?} does not cancel")]
    DifferentialNotSquareZero { from: String, to: String },
    #[error("arrows around generator {0:?} force contradictory gradings")]
    InconsistentGradingSystem(String),
    #[error("no integral Alexander normalization makes the multiset symmetric (component of {0:?})")]
    AsymmetricAlexanderMultiset(String),
}

/// Chain complex over F₂[u,w] with monomial differentials.
///
/// Construction is unchecked; [`KnotComplex::validate`] enforces the grading
/// and d² = 0 laws. Adding an arrow that is already present removes it
/// (coefficients live in F₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotComplex {
    generators: Vec<Generator>,
    arrows: BTreeSet<(usize, usize, Monomial)>,
}

impl KnotComplex {
    pub fn new(generators: Vec<Generator>) -> Self {
        Self {
            generators,
            arrows: BTreeSet::new(),
        }
    }

    /// Convenience constructor from (name, maslov, alexander) triples and
    /// (from, to, a, b) arrows.
    pub fn from_parts<S: Into<String>>(
        gens: impl IntoIterator<Item = (S, i64, i64)>,
        arrows: impl IntoIterator<Item = (usize, usize, Exp, Exp)>,
    ) -> Self {
        let generators = gens
            .into_iter()
            .map(|(name, maslov, alexander)| Generator {
                name: name.into(),
                grading: Bigrading { maslov, alexander },
            })
            .collect();
        let mut k = Self::new(generators);
        for (from, to, a, b) in arrows {
            k.add_arrow(from, to, Monomial::new(a, b));
        }
        k
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Arrows as (from, to, monomial), in deterministic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, Monomial)> + '_ {
        self.arrows.iter().copied()
    }

    /// Toggle an arrow mod 2.
    pub fn add_arrow(&mut self, from: usize, to: usize, m: Monomial) {
        assert!(from < self.len() && to < self.len(), "arrow endpoint out of range");
        let key = (from, to, m);
        if !self.arrows.remove(&key) {
            self.arrows.insert(key);
        }
    }

    pub fn alexander(&self, i: usize) -> i64 {
        self.generators[i].grading.alexander
    }

    pub fn maslov(&self, i: usize) -> i64 {
        self.generators[i].grading.maslov
    }

    /// Check the structural laws: nonempty, distinct names, no self-loops,
    /// every arrow homogeneous, and d² = 0 over F₂[u,w].
    pub fn validate(&self) -> Result<(), ComplexError> {
        if self.generators.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.as_str()) {
                return Err(ComplexError::DuplicateName(g.name.clone()));
            }
        }
        for &(from, to, m) in &self.arrows {
            if from == to {
                return Err(ComplexError::SelfLoop(self.generators[from].name.clone()));
            }
            let gf = self.generators[from].grading;
            let gt = self.generators[to].grading;
            let homogeneous = gf.alexander == gt.alexander - i64::from(m.a) + i64::from(m.b)
                && gf.maslov == gt.maslov - 2 * i64::from(m.a) + 1;
            if !homogeneous {
                return Err(ComplexError::InhomogeneousArrow {
                    from: self.generators[from].name.clone(),
                    to: self.generators[to].name.clone(),
                    monomial: m,
                });
            }
        }
        // d²: group composites by (source, target, monomial); each class must
        // have even multiplicity.
        let mut outgoing: BTreeMap<usize, Vec<(usize, Monomial)>> = BTreeMap::new();
        for &(from, to, m) in &self.arrows {
            outgoing.entry(from).or_default().push((to, m));
        }
        let mut composite: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
        for &(from, mid, m1) in &self.arrows {
            if let Some(nexts) = outgoing.get(&mid) {
                for &(to, m2) in nexts {
                    *composite.entry((from, to, m1.mul(m2))).or_insert(0) += 1;
                }
            }
        }
        for ((from, to, _), count) in composite {
            if count % 2 != 0 {
                return Err(ComplexError::DifferentialNotSquareZero {
                    from: self.generators[from].name.clone(),
                    to: self.generators[to].name.clone(),
                });
            }
        }
        Ok(())
    }

    /// Cancel pairs connected by unit arrows until none remain. The result
    /// is chain homotopy equivalent to the input and has a u=w=0-reduced
    /// differential. Requires a valid complex.
    pub fn reduce(&self) -> KnotComplex {
        let n = self.len();
        let mut alive = vec![true; n];
        let mut arrows: BTreeSet<(usize, usize, Monomial)> = self.arrows.clone();
        while let Some(&(x, y, _)) = arrows.iter().find(|&&(_, _, m)| m.is_unit()) {
            let incoming: Vec<(usize, Monomial)> = arrows
                .iter()
                .filter(|&&(f, t, _)| t == y && f != x)
                .map(|&(f, _, m)| (f, m))
                .collect();
            let outgoing: Vec<(usize, Monomial)> = arrows
                .iter()
                .filter(|&&(f, t, _)| f == x && t != y)
                .map(|&(_, t, m)| (t, m))
                .collect();
            for &(z, m1) in &incoming {
                for &(t, m2) in &outgoing {
                    // z = t would be a self-loop, which the odd Maslov drop
                    // along z → y → reversed x → t rules out.
                    assert_ne!(z, t, "unit cancellation cannot close a loop");
                    let key = (z, t, m1.mul(m2));
                    if !arrows.remove(&key) {
                        arrows.insert(key);
                    }
                }
            }
            arrows.retain(|&(f, t, _)| f != x && t != x && f != y && t != y);
            alive[x] = false;
            alive[y] = false;
        }
        let mut remap = vec![usize::MAX; n];
        let mut generators = Vec::new();
        for i in 0..n {
            if alive[i] {
                remap[i] = generators.len();
                generators.push(self.generators[i].clone());
            }
        }
        let mut out = KnotComplex::new(generators);
        for (f, t, m) in arrows {
            out.add_arrow(remap[f], remap[t], m);
        }
        out
    }

    /// Mirror: reverse every arrow and negate both gradings. Generator names
    /// toggle a `*` suffix.
    pub fn dual(&self) -> KnotComplex {
        // The rename is an involution (x ↔ x*) so dualizing twice restores
        // the original complex on the nose, names included.
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                name: match g.name.strip_suffix('*') {
                    Some(base) => base.to_string(),
                    None => format!("{}*", g.name),
                },
                grading: Bigrading {
                    maslov: -g.grading.maslov,
                    alexander: -g.grading.alexander,
                },
            })
            .collect();
        let mut out = KnotComplex::new(generators);
        for &(from, to, m) in &self.arrows {
            out.add_arrow(to, from, m);
        }
        out
    }

    /// Tensor product over F₂[u,w], modelling the connected sum. Generator
    /// (g, h) is named `g.h` and indexed g·|other| + h.
    pub fn tensor(&self, other: &KnotComplex) -> KnotComplex {
        let n2 = other.len();
        let generators = self
            .generators
            .iter()
            .flat_map(|g| {
                other.generators.iter().map(move |h| Generator {
                    name: format!("{}.{}", g.name, h.name),
                    grading: Bigrading {
                        maslov: g.grading.maslov + h.grading.maslov,
                        alexander: g.grading.alexander + h.grading.alexander,
                    },
                })
            })
            .collect();
        let mut out = KnotComplex::new(generators);
        for &(from, to, m) in &self.arrows {
            for j in 0..n2 {
                out.add_arrow(from * n2 + j, to * n2 + j, m);
            }
        }
        for &(from, to, m) in &other.arrows {
            for i in 0..self.len() {
                out.add_arrow(i * n2 + from, i * n2 + to, m);
            }
        }
        out
    }

    /// Disjoint union of the underlying modules. Names must not collide.
    pub fn direct_sum(&self, other: &KnotComplex) -> KnotComplex {
        let offset = self.len();
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        {
            let mut names = BTreeSet::new();
            for g in &generators {
                assert!(
                    names.insert(g.name.as_str()),
                    "direct sum with colliding generator name {:?}",
                    g.name
                );
            }
        }
        let mut out = KnotComplex::new(generators);
        for &(f, t, m) in &self.arrows {
            out.add_arrow(f, t, m);
        }
        for &(f, t, m) in &other.arrows {
            out.add_arrow(f + offset, t + offset, m);
        }
        out
    }

    /// Uniform Maslov shift, for invariance checks.
    pub fn maslov_shifted(&self, delta: i64) -> KnotComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.grading.maslov += delta;
        }
        out
    }

    /// Largest Alexander grading surviving reduction; an upper bound for the
    /// Seifert genus when the complex comes from a knot. Zero for the unknot.
    pub fn genus_upper(&self) -> i64 {
        self.reduce()
            .generators
            .iter()
            .map(|g| g.grading.alexander)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    // -- collapses to one variable ------------------------------------------

    /// u-exponent of the weight attached to each generator at level `s`:
    /// A(x) − s when the generator sits above the level, else 0.
    fn slice_u_weights(&self, s: i64) -> Vec<Exp> {
        self.generators
            .iter()
            .map(|g| (g.grading.alexander - s).max(0) as Exp)
            .collect()
    }

    /// The level-s slice: one copy of F₂[U] per generator, boundary entry
    /// for an arrow x → y given by the U-power matching the weights,
    /// e = weight(x) + a − weight(y), graded by μ − 2·weight.
    pub fn slice(&self, s: i64) -> SliceComplex {
        let weights = self.slice_u_weights(s);
        let grades: Vec<i64> = self
            .generators
            .iter()
            .zip(&weights)
            .map(|(g, &w)| g.grading.maslov - 2 * i64::from(w))
            .collect();
        let entries = self.arrows.iter().map(|&(from, to, m)| {
            let e = weights[from] + m.a - weights[to];
            ((to, from), e)
        });
        let boundary = GradedMonoMatrix::new(grades, -2, 1, entries)
            .expect("slice of a homogeneous complex satisfies its grade law");
        SliceComplex {
            level: s,
            weights,
            boundary,
        }
    }

    /// Diagonal exponents of the chain map slice(s) → slice(s+1) induced by
    /// multiplication with w: generator x is scaled by U^ε with ε = 1 exactly
    /// when s < A(x).
    pub fn w_map(&self, s: i64) -> Vec<Exp> {
        self.generators
            .iter()
            .map(|g| u32::from(s < g.grading.alexander))
            .collect()
    }

    /// Diagonal exponents of the chain map slice(s) → slice(s−1) induced by
    /// multiplication with u: ε = 1 exactly when s > A(x).
    pub fn u_map(&self, s: i64) -> Vec<Exp> {
        self.generators
            .iter()
            .map(|g| u32::from(s > g.grading.alexander))
            .collect()
    }

    /// Set w = t and kill u: arrows with a > 0 drop, the rest keep exponent
    /// b. Graded by μ + 2A with law grade(col) = grade(row) + 2e + 1.
    pub fn hat_specialize(&self) -> GradedMonoMatrix {
        let grades: Vec<i64> = self
            .generators
            .iter()
            .map(|g| g.grading.maslov + 2 * g.grading.alexander)
            .collect();
        let entries = self
            .arrows
            .iter()
            .filter(|&&(_, _, m)| m.a == 0)
            .map(|&(from, to, m)| ((to, from), m.b));
        GradedMonoMatrix::new(grades, 2, 1, entries)
            .expect("hat specialization of a homogeneous complex satisfies its grade law")
    }

    /// Substitute u ↦ vᵖ, w ↦ v^q (p, q ≥ 0, not both zero). At p = 0 the
    /// variable u becomes 1 and its arrows survive with exponent qb — unlike
    /// [`Self::hat_specialize`], which kills them. Graded by
    /// −(p+q)·μ + 2q·A with law grade(col) = grade(row) + 2e − (p+q).
    pub fn v_specialize(&self, p: Exp, q: Exp) -> GradedMonoMatrix {
        assert!(p > 0 || q > 0, "v-specialization needs p + q > 0");
        let grades: Vec<i64> = self
            .generators
            .iter()
            .map(|g| {
                -i64::from(p + q) * g.grading.maslov + 2 * i64::from(q) * g.grading.alexander
            })
            .collect();
        let entries = self
            .arrows
            .iter()
            .map(|&(from, to, m)| ((to, from), p * m.a + q * m.b));
        GradedMonoMatrix::new(grades, 2, -i64::from(p + q), entries)
            .expect("v-specialization of a homogeneous complex satisfies its grade law")
    }
}

/// One level of the Alexander filtration, collapsed to a single-variable
/// graded complex.
#[derive(Clone, Debug)]
pub struct SliceComplex {
    pub level: i64,
    /// u-exponent of each generator's weight at this level.
    pub weights: Vec<Exp>,
    pub boundary: GradedMonoMatrix,
}

// ---------------------------------------------------------------------------
// Grading inference
// ---------------------------------------------------------------------------

/// Solve for gradings from the arrow structure alone.
///
/// Within a connected component every relative grading is forced; absolute
/// values are fixed by centring the Alexander multiset at zero (which must
/// come out symmetric) and anchoring the component's first generator at
/// Maslov 0. An explicit `anchor` (generator index, grading) overrides both
/// choices for its own component.
pub fn infer_gradings(
    names: Vec<String>,
    arrows: &[(usize, usize, Monomial)],
    anchor: Option<(usize, Bigrading)>,
) -> Result<KnotComplex, ComplexError> {
    let n = names.len();
    let mut adj: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); n];
    for &(from, to, m) in arrows {
        if from == to {
            return Err(ComplexError::SelfLoop(names[from].clone()));
        }
        // μ(from) − μ(to) and A(from) − A(to) forced by homogeneity.
        let dm = -2 * i64::from(m.a) + 1;
        let da = -i64::from(m.a) + i64::from(m.b);
        adj[from].push((to, dm, da));
        adj[to].push((from, -dm, -da));
    }
    let mut rel: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut component: Vec<usize> = vec![usize::MAX; n];
    let mut roots: Vec<usize> = Vec::new();
    for start in 0..n {
        if rel[start].is_some() {
            continue;
        }
        let comp_id = roots.len();
        roots.push(start);
        rel[start] = Some((0, 0));
        component[start] = comp_id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let (vm, va) = rel[v].unwrap();
            for &(w, dm, da) in &adj[v] {
                let expect = (vm - dm, va - da);
                match rel[w] {
                    None => {
                        rel[w] = Some(expect);
                        component[w] = comp_id;
                        queue.push_back(w);
                    }
                    Some(got) if got != expect => {
                        return Err(ComplexError::InconsistentGradingSystem(names[w].clone()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut shifts: Vec<(i64, i64)> = Vec::with_capacity(roots.len());
    for (comp_id, &root) in roots.iter().enumerate() {
        let members: Vec<usize> = (0..n).filter(|&i| component[i] == comp_id).collect();
        if let Some((ai, target)) = anchor {
            if component[ai] == comp_id {
                let (rm, ra) = rel[ai].unwrap();
                shifts.push((target.maslov - rm, target.alexander - ra));
                continue;
            }
        }
        let total: i64 = members.iter().map(|&i| rel[i].unwrap().1).sum();
        let count = members.len() as i64;
        if total % count != 0 {
            return Err(ComplexError::AsymmetricAlexanderMultiset(
                names[root].clone(),
            ));
        }
        let a_shift = -total / count;
        let mut shifted: Vec<i64> = members
            .iter()
            .map(|&i| rel[i].unwrap().1 + a_shift)
            .collect();
        shifted.sort_unstable();
        let negated: Vec<i64> = shifted.iter().rev().map(|&a| -a).collect();
        if shifted != negated {
            return Err(ComplexError::AsymmetricAlexanderMultiset(
                names[root].clone(),
            ));
        }
        let m_shift = -rel[root].unwrap().0;
        shifts.push((m_shift, a_shift));
    }
    let generators = names
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let (rm, ra) = rel[i].unwrap();
            let (sm, sa) = shifts[component[i]];
            Generator {
                name,
                grading: Bigrading {
                    maslov: rm + sm,
                    alexander: ra + sa,
                },
            }
        })
        .collect();
    let mut k = KnotComplex::new(generators);
    for &(f, t, m) in arrows {
        k.add_arrow(f, t, m);
    }
    Ok(k)
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, msg: impl Into<String>) -> Self {
        Self {
            line,
            msg: msg.into(),
        }
    }
}

/// Parse the plain-text complex format:
///
/// ```text
/// # comment (the '#' must start the line)
/// generator <name> [<maslov> <alexander>]
/// arrow <from> <to> <a> <b>
/// ```
///
/// Gradings are all-or-none: give them on every generator or on none, in
/// which case they are inferred from the arrows. Repeating an arrow line
/// removes the arrow again (mod-2 coefficients).
pub fn parse_complex(text: &str) -> Result<KnotComplex, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut gradings: Vec<Option<Bigrading>> = Vec::new();
    let mut arrows: Vec<(usize, usize, Monomial)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        if raw.starts_with('#') || raw.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens[0] {
            "generator" => {
                let (name, grading) = match tokens.len() {
                    2 => (tokens[1], None),
                    4 => {
                        let maslov = tokens[2]
                            .parse()
                            .map_err(|_| ParseError::new(ln, "bad maslov grading"))?;
                        let alexander = tokens[3]
                            .parse()
                            .map_err(|_| ParseError::new(ln, "bad alexander grading"))?;
                        (tokens[1], Some(Bigrading { maslov, alexander }))
                    }
                    _ => {
                        return Err(ParseError::new(
                            ln,
                            "expected `generator <name>` or `generator <name> <maslov> <alexander>`",
                        ))
                    }
                };
                if index.contains_key(name) {
                    return Err(ParseError::new(ln, format!("duplicate generator {:?}", name)));
                }
                index.insert(name.to_string(), names.len());
                names.push(name.to_string());
                gradings.push(grading);
            }
            "arrow" => {
                if tokens.len() != 5 {
                    return Err(ParseError::new(ln, "expected `arrow <from> <to> <a> <b>`"));
                }
                let from = *index
                    .get(tokens[1])
                    .ok_or_else(|| ParseError::new(ln, format!("unknown generator {:?}", tokens[1])))?;
                let to = *index
                    .get(tokens[2])
                    .ok_or_else(|| ParseError::new(ln, format!("unknown generator {:?}", tokens[2])))?;
                let a = tokens[3]
                    .parse()
                    .map_err(|_| ParseError::new(ln, "bad u-exponent"))?;
                let b = tokens[4]
                    .parse()
                    .map_err(|_| ParseError::new(ln, "bad w-exponent"))?;
                arrows.push((from, to, Monomial::new(a, b)));
            }
            other => {
                return Err(ParseError::new(ln, format!("unknown directive {:?}", other)));
            }
        }
    }
    let graded = gradings.iter().filter(|g| g.is_some()).count();
    if graded == names.len() {
        let generators = names
            .into_iter()
            .zip(gradings)
            .map(|(name, g)| Generator {
                name,
                grading: g.unwrap(),
            })
            .collect();
        let mut k = KnotComplex::new(generators);
        for (f, t, m) in arrows {
            k.add_arrow(f, t, m);
        }
        Ok(k)
    } else if graded == 0 {
        infer_gradings(names, &arrows, None)
            .map_err(|e| ParseError::new(0, format!("grading inference failed: {}", e)))
    } else {
        Err(ParseError::new(
            0,
            "gradings must be given on every generator or on none",
        ))
    }
}

/// Inverse of [`parse_complex`]: deterministic, round-trips exactly.
pub fn emit_complex(k: &KnotComplex) -> String {
    let mut out = String::new();
    for g in k.generators() {
        out.push_str(&format!(
            "generator {} {} {}\n",
            g.name, g.grading.maslov, g.grading.alexander
        ));
    }
    for (f, t, m) in k.arrows() {
        out.push_str(&format!(
            "arrow {} {} {} {}\n",
            k.generators()[f].name,
            k.generators()[t].name,
            m.a,
            m.b
        ));
    }
    out
}
