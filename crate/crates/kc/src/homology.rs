//! Homology of the level slices and the invariants read off from them:
//! stability classification, ν⁻, the ideal sequence, and torsion depths.
//!
//! The slices of a complex stabilize outside [−S₀, S₀] where S₀ is the
//! largest Alexander grading surviving reduction. [`Analysis`] computes the
//! homology of every slice in that window once, keeps the change-of-basis
//! data, and answers all further questions by pushing explicit cycles
//! through the w- and u-multiplication maps and expressing the results in
//! the stored decompositions. No truncation is involved anywhere.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, KnotComplex};
use crate::polyalg::{graded_reduce, Exp, Gf2Poly, ModuleDecomp, ReduceError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("not a knot-like complex: {0}")]
    NotAKnotComplex(String),
    #[error("filtration symmetry violated: {0}")]
    SymmetryViolation(String),
    #[error("torsion class at level {level} survives past the stable range")]
    NonTerminatingTorsion { level: i64 },
}

/// What the stable slice looks like.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableKind {
    /// One free class and no torsion: the shape every knot complex has.
    KnotLike,
    /// Zero free rank: a purely torsion summand (so ν⁻ and the ideal
    /// sequence are undefined, torsion depths still make sense).
    TorsionOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableInfo {
    pub s0: i64,
    pub kind: StableKind,
}

/// Strictly increasing u-exponents (i₀ = 0 < … < i_n = ν⁻) of the minimal
/// monomial generators of the stable ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSequence(pub Vec<u32>);

impl fmt::Display for IdealSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// One torsion class: where it lives, its U-order, and how many
/// multiplications by w resp. u kill it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionClassInfo {
    pub level: i64,
    pub order: Exp,
    pub w_death: u32,
    pub u_death: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionProfile {
    /// Classes ordered by level, then by their slot in the decomposition.
    pub classes: Vec<TorsionClassInfo>,
}

impl TorsionProfile {
    /// 𝔱⁻: the deepest w-death, 0 when there is no torsion.
    pub fn max_w_death(&self) -> u32 {
        self.classes.iter().map(|c| c.w_death).max().unwrap_or(0)
    }

    /// Deepest u-death over this profile's own classes. Note 𝔱⁺ is defined
    /// through the dual complex and is generally a different number.
    pub fn max_u_death(&self) -> u32 {
        self.classes.iter().map(|c| c.u_death).max().unwrap_or(0)
    }
}

/// Slice homology of a complex over the whole stable window, with the data
/// needed to push classes between levels.
pub struct Analysis {
    reduced: KnotComplex,
    info: StableInfo,
    slices: BTreeMap<i64, ModuleDecomp>,
}

impl Analysis {
    pub fn new(k: &KnotComplex) -> Result<Self, HomologyError> {
        k.validate()?;
        let reduced = k.reduce();
        let s0 = reduced
            .generators()
            .iter()
            .map(|g| g.grading.alexander)
            .max()
            .unwrap_or(0)
            .max(0);
        let mut slices = BTreeMap::new();
        for s in -s0 - 1..=s0 + 1 {
            slices.insert(s, graded_reduce(&reduced.slice(s).boundary)?);
        }
        // The window really is the whole story: past ±S₀ the slices repeat
        // (up to a uniform grading shift at the bottom) and the connecting
        // maps are isomorphisms. Both facts follow from the choice of S₀
        // and the symmetry of the Alexander multiset, so they are asserted
        // rather than reported.
        debug_assert_eq!(
            reduced.slice(s0).boundary,
            reduced.slice(s0 + 1).boundary
        );
        debug_assert!(reduced.w_map(s0).iter().all(|&e| e == 0));
        debug_assert!(reduced.u_map(-s0).iter().all(|&e| e == 0));
        let classify = |d: &ModuleDecomp| (d.free_rank(), d.torsion_orders().len());
        let kind = match classify(&slices[&s0]) {
            (1, 0) => StableKind::KnotLike,
            (0, 0) => StableKind::TorsionOnly,
            (r, t) => {
                return Err(HomologyError::NotAKnotComplex(format!(
                    "stable slice has free rank {} and {} torsion classes",
                    r, t
                )))
            }
        };
        if classify(&slices[&-s0]).0 != classify(&slices[&s0]).0
            || classify(&slices[&-s0]).1 != 0
        {
            return Err(HomologyError::NotAKnotComplex(
                "bottom stable slice does not match the top one".into(),
            ));
        }
        let want_rank = match kind {
            StableKind::KnotLike => 1,
            StableKind::TorsionOnly => 0,
        };
        for s in -s0..=s0 {
            if slices[&s].free_rank() != want_rank {
                return Err(HomologyError::NotAKnotComplex(format!(
                    "slice at level {} has free rank {}, expected {}",
                    s,
                    slices[&s].free_rank(),
                    want_rank
                )));
            }
        }
        Ok(Self {
            reduced,
            info: StableInfo { s0, kind },
            slices,
        })
    }

    pub fn stable_info(&self) -> StableInfo {
        self.info
    }

    pub fn s0(&self) -> i64 {
        self.info.s0
    }

    pub fn kind(&self) -> StableKind {
        self.info.kind
    }

    pub fn reduced(&self) -> &KnotComplex {
        &self.reduced
    }

    fn decomp_clamped(&self, level: i64) -> &ModuleDecomp {
        let s0 = self.info.s0;
        &self.slices[&level.clamp(-s0 - 1, s0 + 1)]
    }

    /// Multiply a chain at `level` by w (or u), landing one level up (down).
    fn push_once(&self, v: &mut [Gf2Poly], level: i64, towards_w: bool) {
        let eps = if towards_w {
            self.reduced.w_map(level)
        } else {
            self.reduced.u_map(level)
        };
        for (p, e) in v.iter_mut().zip(eps) {
            if e > 0 {
                *p = p.shifted(e);
            }
        }
    }

    /// U-exponent of the image of the level-s free class at the stable
    /// slice. Zero at s = S₀, weakly decreasing in s.
    fn j_value(&self, s: i64) -> Result<u32, HomologyError> {
        let s0 = self.info.s0;
        let compute = |mut v: Vec<Gf2Poly>| -> Result<u32, HomologyError> {
            for level in s..s0 {
                self.push_once(&mut v, level, true);
            }
            let coords = self.slices[&s0]
                .express(&v)
                .expect("pushforward of a cycle stays a cycle");
            let f = &coords.free[0];
            f.as_monomial().ok_or_else(|| {
                HomologyError::NotAKnotComplex(if f.is_zero() {
                    format!("free class at level {} dies at the stable slice", s)
                } else {
                    format!(
                        "free class at level {} maps to the non-monomial {} at the stable slice",
                        s, f
                    )
                })
            })
        };
        let b = self.slices[&s].free_classes().swap_remove(0);
        let j = compute(b.clone())?;
        // The value must not depend on which cycle generates the free part:
        // perturbing by a torsion class has to land on the same answer.
        #[cfg(debug_assertions)]
        if let Some((trep, _)) = self.slices[&s].torsion_classes().first() {
            let mut perturbed = b;
            for (dst, src) in perturbed.iter_mut().zip(trep) {
                dst.add_assign(src);
            }
            debug_assert_eq!(compute(perturbed)?, j, "j depends on the generator choice");
        }
        Ok(j)
    }

    fn j_values(&self) -> Result<BTreeMap<i64, u32>, HomologyError> {
        if self.info.kind != StableKind::KnotLike {
            return Err(HomologyError::NotAKnotComplex(
                "no free class at the stable slice".into(),
            ));
        }
        let s0 = self.info.s0;
        let mut js = BTreeMap::new();
        for s in -s0..=s0 {
            js.insert(s, self.j_value(s)?);
        }
        for s in -s0..s0 {
            if js[&s] < js[&(s + 1)] {
                return Err(HomologyError::NotAKnotComplex(format!(
                    "free-image exponents increase from level {} to {}",
                    s,
                    s + 1
                )));
            }
        }
        debug_assert_eq!(js[&s0], 0);
        Ok(js)
    }

    /// Least level whose free class already generates the stable homology.
    pub fn nu_minus(&self) -> Result<i64, HomologyError> {
        let js = self.j_values()?;
        Ok(*js
            .iter()
            .find(|(_, &j)| j == 0)
            .expect("j vanishes at the stable level")
            .0)
    }

    /// Minimal monomial generators of the stable ideal, reported as their
    /// strictly increasing u-exponents.
    pub fn ideal_sequence(&self) -> Result<IdealSequence, HomologyError> {
        let js = self.j_values()?;
        let nu = *js.iter().find(|(_, &j)| j == 0).unwrap().0;
        let mut mons: Vec<(u32, u32)> = Vec::new();
        for (&s, &j) in js.range(..=nu) {
            let b = i64::from(j) + s;
            if b < 0 {
                return Err(HomologyError::SymmetryViolation(format!(
                    "negative w-exponent at level {}",
                    s
                )));
            }
            mons.push((j, b as u32));
        }
        mons.sort_unstable();
        mons.dedup();
        let minimal: Vec<(u32, u32)> = mons
            .iter()
            .filter(|&&(a, b)| {
                !mons
                    .iter()
                    .any(|&(a2, b2)| (a2, b2) != (a, b) && a2 <= a && b2 <= b)
            })
            .copied()
            .collect();
        let n = minimal.len();
        let anti_symmetric = (0..n).all(|k| minimal[k].1 == minimal[n - 1 - k].0);
        if minimal[0].0 != 0 || !anti_symmetric {
            return Err(HomologyError::SymmetryViolation(format!(
                "minimal generators {:?} are not antisymmetric",
                minimal
            )));
        }
        debug_assert_eq!(i64::from(minimal[n - 1].0), nu);
        Ok(IdealSequence(minimal.into_iter().map(|(a, _)| a).collect()))
    }

    /// Death of the class of `v` (a cycle at `level`) under repeated
    /// multiplication by w or u: the least k ≥ 1 with wᵏ·[v] = 0.
    fn death(
        &self,
        mut v: Vec<Gf2Poly>,
        level: i64,
        towards_w: bool,
    ) -> Result<u32, HomologyError> {
        let cap = (2 * self.info.s0 + 2) as u32;
        for k in 1..=cap {
            let step = i64::from(k) - 1;
            let from = if towards_w { level + step } else { level - step };
            self.push_once(&mut v, from, towards_w);
            let to = if towards_w { from + 1 } else { from - 1 };
            let coords = self
                .decomp_clamped(to)
                .express(&v)
                .expect("pushforward of a cycle stays a cycle");
            if coords.is_zero() {
                return Ok(k);
            }
        }
        Err(HomologyError::NonTerminatingTorsion { level })
    }

    /// Every torsion class in the stable window with its w- and u-depths.
    pub fn torsion_profile(&self) -> Result<TorsionProfile, HomologyError> {
        let s0 = self.info.s0;
        let mut classes = Vec::new();
        for s in -s0..=s0 {
            for (rep, order) in self.slices[&s].torsion_classes() {
                let w_death = self.death(rep.clone(), s, true)?;
                let u_death = self.death(rep, s, false)?;
                classes.push(TorsionClassInfo {
                    level: s,
                    order,
                    w_death,
                    u_death,
                });
            }
        }
        Ok(TorsionProfile { classes })
    }
}

// ---------------------------------------------------------------------------
// Free-function façade
// ---------------------------------------------------------------------------

/// Classify the stable slice and report the stabilization level.
pub fn stable_check(k: &KnotComplex) -> Result<StableInfo, HomologyError> {
    Analysis::new(k).map(|a| a.info)
}

pub fn nu_minus(k: &KnotComplex) -> Result<i64, HomologyError> {
    Analysis::new(k)?.nu_minus()
}

pub fn ideal_sequence(k: &KnotComplex) -> Result<IdealSequence, HomologyError> {
    Analysis::new(k)?.ideal_sequence()
}

pub fn torsion_profile(k: &KnotComplex) -> Result<TorsionProfile, HomologyError> {
    Analysis::new(k)?.torsion_profile()
}

/// 𝔱⁻: the deepest w-death among all torsion classes.
pub fn t_minus(k: &KnotComplex) -> Result<u32, HomologyError> {
    Ok(torsion_profile(k)?.max_w_death())
}

/// 𝔱⁺: by definition the 𝔱⁻ of the mirror.
pub fn t_plus(k: &KnotComplex) -> Result<u32, HomologyError> {
    t_minus(&k.dual())
}

/// 𝔱 = max(𝔱⁻, 𝔱⁺).
pub fn t_torsion(k: &KnotComplex) -> Result<u32, HomologyError> {
    Ok(t_minus(k)?.max(t_plus(k)?))
}

/// Free rank and torsion orders of the hat-flavoured homology (u killed,
/// w = t).
pub fn hat_homology(k: &KnotComplex) -> Result<(usize, Vec<Exp>), HomologyError> {
    k.validate()?;
    let d = graded_reduce(&k.reduce().hat_specialize())?;
    Ok((d.free_rank(), d.torsion_orders()))
}

/// 𝔱̂: deepest torsion order of the hat homology, which must have rank one.
pub fn t_hat(k: &KnotComplex) -> Result<u32, HomologyError> {
    let (rank, orders) = hat_homology(k)?;
    if rank != 1 {
        return Err(HomologyError::NotAKnotComplex(format!(
            "hat homology has rank {}",
            rank
        )));
    }
    Ok(orders.into_iter().max().unwrap_or(0))
}

/// Deepest torsion order after substituting u ↦ vᵖ, w ↦ v^q.
pub fn t_pq(k: &KnotComplex, p: Exp, q: Exp) -> Result<u32, HomologyError> {
    k.validate()?;
    let d = graded_reduce(&k.reduce().v_specialize(p, q))?;
    Ok(d.torsion_orders().into_iter().max().unwrap_or(0))
}
