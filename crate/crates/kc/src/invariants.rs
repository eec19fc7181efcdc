//! Monomial-ideal arithmetic on ideal sequences, the depth distances ℓ,
//! closed torus-knot formulas, and the derived lower bounds: unknotting
//! number, Gordian distance, alternation number, and torus-knot adjacency.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builders::{torus_knot, BuilderError};
use crate::complex::KnotComplex;
use crate::homology::{t_hat, Analysis, HomologyError, IdealSequence};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Builder(#[from] BuilderError),
    #[error("target torus knot has smaller unknotting number than the source")]
    NotAscending,
}

/// An ideal of F₂[u,w] generated by monomials, kept as its minimal
/// generators sorted by ascending u-exponent (so w-exponents descend).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    gens: Vec<(u32, u32)>,
}

impl MonomialIdeal {
    pub fn new(gens: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut gens: Vec<(u32, u32)> = gens.into_iter().collect();
        gens.sort_unstable();
        gens.dedup();
        let minimal: Vec<(u32, u32)> = gens
            .iter()
            .filter(|&&(a, b)| {
                !gens
                    .iter()
                    .any(|&(a2, b2)| (a2, b2) != (a, b) && a2 <= a && b2 <= b)
            })
            .copied()
            .collect();
        MonomialIdeal { gens: minimal }
    }

    pub fn gens(&self) -> &[(u32, u32)] {
        &self.gens
    }

    /// Is u^a·w^b in the ideal?
    pub fn contains_monomial(&self, a: u32, b: u32) -> bool {
        self.gens.iter().any(|&(ga, gb)| ga <= a && gb <= b)
    }

    /// Is w^shift·other contained in self? On failure reports the first
    /// shifted generator that falls outside.
    pub fn first_uncontained(&self, other: &MonomialIdeal, w_shift: u32) -> Option<(u32, u32)> {
        other
            .gens
            .iter()
            .map(|&(a, b)| (a, b + w_shift))
            .find(|&(a, b)| !self.contains_monomial(a, b))
    }

    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        self.first_uncontained(other, 0).is_none()
    }
}

/// The stable ideal ⟨u^{i_k} w^{i_{n−k}}⟩ of an ideal sequence.
pub fn ideal_of(seq: &IdealSequence) -> MonomialIdeal {
    let n = seq.0.len() - 1;
    MonomialIdeal::new((0..=n).map(|k| (seq.0[k], seq.0[n - k])))
}

/// 𝔞: the minimum total degree of a monomial in the stable ideal.
pub fn frak_a(seq: &IdealSequence) -> u32 {
    let n = seq.0.len() - 1;
    (0..=n).map(|k| seq.0[k] + seq.0[n - k]).min().unwrap()
}

/// ℓ(ι, ι′): the least p with w^p·𝔸(ι′) ⊆ 𝔸(ι).
pub fn ell_distance(seq: &IdealSequence, other: &IdealSequence) -> u32 {
    let lhs = ideal_of(seq);
    let rhs = ideal_of(other);
    let cap = *seq.0.last().unwrap();
    (0..=cap)
        .find(|&p| lhs.first_uncontained(&rhs, p).is_none())
        .expect("w^{i_n} multiplies everything into the ideal")
}

/// ℓ⁻(K, K′) = ℓ(ι(K), ι(K′)).
pub fn ell_minus(k: &KnotComplex, k2: &KnotComplex) -> Result<u32, HomologyError> {
    let a = Analysis::new(k)?.ideal_sequence()?;
    let b = Analysis::new(k2)?.ideal_sequence()?;
    Ok(ell_distance(&a, &b))
}

/// ℓ⁺(K, K′) = ℓ⁻(−K, −K′).
pub fn ell_plus(k: &KnotComplex, k2: &KnotComplex) -> Result<u32, HomologyError> {
    ell_minus(&k.dual(), &k2.dual())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GordianCertificate {
    DepthSum,
    TorsionMinus,
    TorsionPlus,
    TorsionHat,
    TorsionHatMirror,
}

impl fmt::Display for GordianCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GordianCertificate::DepthSum => "depth sum ℓ⁻ + ℓ⁺",
            GordianCertificate::TorsionMinus => "torsion gap |𝔱⁻(K) − 𝔱⁻(K′)|",
            GordianCertificate::TorsionPlus => "torsion gap |𝔱⁺(K) − 𝔱⁺(K′)|",
            GordianCertificate::TorsionHat => "torsion gap |𝔱̂(K) − 𝔱̂(K′)|",
            GordianCertificate::TorsionHatMirror => "torsion gap |𝔱̂(−K) − 𝔱̂(−K′)|",
        })
    }
}

/// Lower bound for the Gordian distance together with the term achieving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GordianBound {
    pub bound: u32,
    pub certificate: GordianCertificate,
    pub depth_sum: u32,
    pub t_minus_gap: u32,
    pub t_plus_gap: u32,
    pub t_hat_gap: u32,
    pub t_hat_mirror_gap: u32,
}

/// Every invariant of one knot complex that feeds the bounds, plus the
/// bounds themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub nu_minus: i64,
    pub nu_minus_mirror: i64,
    pub ideal_seq: Vec<u32>,
    pub ideal_seq_mirror: Vec<u32>,
    pub t_minus: u32,
    pub t_plus: u32,
    pub t: u32,
    pub t_hat: u32,
    pub t_hat_mirror: u32,
    pub frak_a: u32,
    pub genus_upper: i64,
    pub u_lower: u32,
    pub u_minus_lower: u32,
    pub u_plus_lower: u32,
    pub alt_lower: u32,
}

/// All lower bounds for the unknotting number of one knot complex.
pub fn unknotting_report(k: &KnotComplex) -> Result<InvariantReport, HomologyError> {
    let a = Analysis::new(k)?;
    let ad = Analysis::new(&k.dual())?;
    let seq = a.ideal_sequence()?;
    let seq_m = ad.ideal_sequence()?;
    let nu = a.nu_minus()?;
    let nu_m = ad.nu_minus()?;
    let profile = a.torsion_profile()?;
    let profile_m = ad.torsion_profile()?;
    let t_minus = profile.max_w_death();
    let t_plus = profile_m.max_w_death();
    let t = t_minus.max(t_plus);
    let th = t_hat(k)?;
    let th_m = t_hat(&k.dual())?;
    let fa = frak_a(&seq);
    let alt = [
        nu - i64::from(fa),
        i64::from(th) - 1,
        (i64::from(t) - 1).min(nu),
    ]
    .into_iter()
    .max()
    .unwrap()
    .max(0) as u32;
    let u_lower = [(nu + nu_m) as u32, t, th, th_m].into_iter().max().unwrap();
    Ok(InvariantReport {
        nu_minus: nu,
        nu_minus_mirror: nu_m,
        ideal_seq: seq.0,
        ideal_seq_mirror: seq_m.0,
        t_minus,
        t_plus,
        t,
        t_hat: th,
        t_hat_mirror: th_m,
        frak_a: fa,
        genus_upper: a.s0(),
        u_lower,
        u_minus_lower: nu as u32,
        u_plus_lower: nu_m as u32,
        alt_lower: alt,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AltCertificate {
    NuMinusFrakA,
    THatMinusOne,
    CappedTorsion,
}

impl fmt::Display for AltCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AltCertificate::NuMinusFrakA => "ν⁻ − 𝔞",
            AltCertificate::THatMinusOne => "𝔱̂ − 1",
            AltCertificate::CappedTorsion => "min{𝔱 − 1, ν⁻}",
        })
    }
}

/// Lower bound for the alternation number and the term achieving it.
pub fn alt_lower(k: &KnotComplex) -> Result<(u32, AltCertificate), HomologyError> {
    let r = unknotting_report(k)?;
    let terms = [
        (r.nu_minus - i64::from(r.frak_a), AltCertificate::NuMinusFrakA),
        (i64::from(r.t_hat) - 1, AltCertificate::THatMinusOne),
        (
            (i64::from(r.t) - 1).min(r.nu_minus),
            AltCertificate::CappedTorsion,
        ),
    ];
    let best = terms.into_iter().max_by_key(|&(v, _)| v).unwrap();
    if best.0 <= 0 {
        Ok((0, best.1))
    } else {
        Ok((best.0 as u32, best.1))
    }
}

/// Lower bound for the Gordian distance between two knot complexes.
pub fn gordian_lower(k: &KnotComplex, k2: &KnotComplex) -> Result<GordianBound, HomologyError> {
    let r = unknotting_report(k)?;
    let r2 = unknotting_report(k2)?;
    let seq = IdealSequence(r.ideal_seq.clone());
    let seq_m = IdealSequence(r.ideal_seq_mirror.clone());
    let seq2 = IdealSequence(r2.ideal_seq.clone());
    let seq2_m = IdealSequence(r2.ideal_seq_mirror.clone());
    let depth_sum = ell_distance(&seq, &seq2).max(ell_distance(&seq2_m, &seq_m))
        + ell_distance(&seq_m, &seq2_m).max(ell_distance(&seq2, &seq));
    let gaps = [
        (depth_sum, GordianCertificate::DepthSum),
        (r.t_minus.abs_diff(r2.t_minus), GordianCertificate::TorsionMinus),
        (r.t_plus.abs_diff(r2.t_plus), GordianCertificate::TorsionPlus),
        (r.t_hat.abs_diff(r2.t_hat), GordianCertificate::TorsionHat),
        (
            r.t_hat_mirror.abs_diff(r2.t_hat_mirror),
            GordianCertificate::TorsionHatMirror,
        ),
    ];
    let (bound, certificate) = gaps.into_iter().max_by_key(|&(v, _)| v).unwrap();
    // max_by_key returns the last maximum; prefer the first for a stable,
    // most-informative certificate.
    let (bound, certificate) = gaps
        .into_iter()
        .find(|&(v, _)| v == bound)
        .unwrap_or((bound, certificate));
    Ok(GordianBound {
        bound,
        certificate,
        depth_sum,
        t_minus_gap: gaps[1].0,
        t_plus_gap: gaps[2].0,
        t_hat_gap: gaps[3].0,
        t_hat_mirror_gap: gaps[4].0,
    })
}

/// Ideal sequence of T(p, pn+1) by the closed formula
/// i_k = (2k − n⌊k/n⌋)·(⌊k/n⌋ + 1)/2 for k = 0, …, n(p−1).
pub fn torus_ideal_closed_form(p: u32, n: u32) -> IdealSequence {
    assert!(p >= 1 && n >= 1, "parameters must be positive");
    let (p, n) = (i64::from(p), i64::from(n));
    IdealSequence(
        (0..=n * (p - 1))
            .map(|k| {
                let j = k / n;
                ((2 * k - n * j) * (j + 1) / 2) as u32
            })
            .collect(),
    )
}

/// Ideal sequence of a torus knot by alternating partial sums of its
/// staircase exponents: i_k = Σ_{j=0}^{2(n−k)} (−1)^j a_j.
pub fn torus_ideal_summation(p: u32, q: u32) -> Result<IdealSequence, BuilderError> {
    let stairs = torus_knot(p, q)?;
    let a: Vec<i64> = stairs
        .generators()
        .iter()
        .map(|g| g.grading.alexander)
        .collect();
    let n = a.len() / 2;
    Ok(IdealSequence(
        (0..=n)
            .map(|k| {
                let alternating: i64 = a[..=2 * (n - k)]
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| if j % 2 == 0 { v } else { -v })
                    .sum();
                alternating as u32
            })
            .collect(),
    ))
}

/// 𝔞(T(p, pn+1)) = n·⌊p²/4⌋.
pub fn frak_a_torus(p: u32, n: u32) -> u32 {
    n * (p * p / 4)
}

/// The ideal of lattice points satisfying k·i + (p−k)·j ≥ k(p−k)(q−1)/2
/// for every k = 1, …, p−1; it contains the stable ideal of T(p,q), with
/// equality exactly for p ≤ 3.
pub fn apq_ideal(p: u32, q: u32) -> MonomialIdeal {
    assert!(p >= 2, "region needs at least one constraint");
    let (pl, ql) = (i64::from(p), i64::from(q));
    let imax = (pl - 1) * (ql - 1) / 2;
    let j_at = |i: i64| -> i64 {
        (1..pl)
            .map(|k| {
                let need = k * (pl - k) * (ql - 1) - 2 * k * i;
                let denom = 2 * (pl - k);
                // ceiling division, clamped to the first quadrant
                if need <= 0 {
                    0
                } else {
                    (need + denom - 1) / denom
                }
            })
            .max()
            .unwrap()
    };
    MonomialIdeal::new((0..=imax).map(|i| (i as u32, j_at(i) as u32)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjacencyCheck {
    IdealContainment,
    ShiftedContainment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyFailure {
    pub check: AdjacencyCheck,
    pub witness: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyReport {
    pub source: (u32, u32),
    pub target: (u32, u32),
    pub u_gap: u32,
    pub pass: bool,
    pub failure: Option<AdjacencyFailure>,
}

/// Necessary conditions for T(p, p′) to be Gordian-adjacent to T(q, q′):
/// 𝔸(T(q,q′)) ⊆ 𝔸(T(p,p′)) and w^u·𝔸(T(p,p′)) ⊆ 𝔸(T(q,q′)), where u is
/// the gap of the (proven) unknotting numbers. A failed check rules the
/// adjacency out; the report carries the offending monomial.
pub fn torus_adjacency_check(
    p: u32,
    p2: u32,
    q: u32,
    q2: u32,
) -> Result<AdjacencyReport, InvariantError> {
    let source_u = (p - 1) * (p2 - 1) / 2;
    let target_u = (q - 1) * (q2 - 1) / 2;
    let src = ideal_of(&torus_ideal_summation(p, p2)?);
    let tgt = ideal_of(&torus_ideal_summation(q, q2)?);
    if target_u < source_u {
        return Err(InvariantError::NotAscending);
    }
    let u_gap = target_u - source_u;
    let failure = src
        .first_uncontained(&tgt, 0)
        .map(|witness| AdjacencyFailure {
            check: AdjacencyCheck::IdealContainment,
            witness,
        })
        .or_else(|| {
            tgt.first_uncontained(&src, u_gap)
                .map(|witness| AdjacencyFailure {
                    check: AdjacencyCheck::ShiftedContainment,
                    witness,
                })
        });
    Ok(AdjacencyReport {
        source: (p, p2),
        target: (q, q2),
        u_gap,
        pass: failure.is_none(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::complex::KnotComplex;

    fn seq(v: &[u32]) -> IdealSequence {
        IdealSequence(v.to_vec())
    }

    #[test]
    fn monomial_ideal_minimizes_generators() {
        let i = MonomialIdeal::new([(0, 3), (1, 1), (3, 0), (2, 2), (1, 1)]);
        assert_eq!(i.gens(), &[(0, 3), (1, 1), (3, 0)]);
        assert!(i.contains_monomial(1, 1));
        assert!(i.contains_monomial(2, 1));
        assert!(!i.contains_monomial(2, 0));
        assert!(!i.contains_monomial(0, 2));
        let full = MonomialIdeal::new([(0, 0)]);
        assert!(full.contains(&i));
        assert!(!i.contains(&full));
    }

    #[test]
    fn frak_a_minimizes_pair_sums() {
        assert_eq!(frak_a(&seq(&[0])), 0);
        assert_eq!(frak_a(&seq(&[0, 1, 3])), 2);
        assert_eq!(frak_a(&seq(&[0, 1, 2, 3, 4])), 4);
    }

    #[test]
    fn ell_distance_examples() {
        let t23 = seq(&[0, 1]);
        let t25 = seq(&[0, 1, 2]);
        let unknot = seq(&[0]);
        assert_eq!(ell_distance(&t23, &t25), 0);
        assert_eq!(ell_distance(&t25, &t23), 1);
        assert_eq!(ell_distance(&t23, &t23), 0);
        assert_eq!(ell_distance(&t23, &unknot), 1);
        assert_eq!(ell_distance(&seq(&[0, 1, 3]), &unknot), 3);
        assert_eq!(ell_distance(&unknot, &t23), 0);
    }

    #[test]
    fn ell_wrappers_use_both_mirrors() {
        let trefoil = builders::trefoil();
        let unknot = builders::unknot();
        assert_eq!(ell_minus(&trefoil, &unknot), Ok(1));
        assert_eq!(ell_plus(&trefoil, &unknot), Ok(0));
        assert_eq!(ell_minus(&unknot, &trefoil), Ok(0));
    }

    #[test]
    fn closed_form_and_summation_agree_with_pipeline() {
        assert_eq!(torus_ideal_closed_form(2, 3), seq(&[0, 1, 2, 3]));
        assert_eq!(torus_ideal_closed_form(4, 1), seq(&[0, 1, 3, 6]));
        assert_eq!(torus_ideal_closed_form(3, 2), seq(&[0, 1, 2, 4, 6]));
        assert_eq!(torus_ideal_summation(3, 4), Ok(seq(&[0, 1, 3])));
        assert_eq!(torus_ideal_summation(3, 5), Ok(seq(&[0, 1, 2, 4])));
        assert_eq!(torus_ideal_summation(2, 7), Ok(seq(&[0, 1, 2, 3])));
        assert_eq!(torus_ideal_summation(1, 2), Ok(seq(&[0])));
    }

    #[test]
    fn frak_a_torus_closed_form() {
        assert_eq!(frak_a_torus(3, 1), 2);
        assert_eq!(frak_a_torus(2, 5), 5);
        assert_eq!(frak_a_torus(4, 1), 4);
        assert_eq!(frak_a_torus(5, 2), 12);
    }

    #[test]
    fn apq_region_generators() {
        assert_eq!(apq_ideal(3, 4).gens(), &[(0, 3), (1, 1), (3, 0)]);
        assert_eq!(
            apq_ideal(2, 7).gens(),
            &[(0, 3), (1, 2), (2, 1), (3, 0)]
        );
        assert_eq!(
            apq_ideal(4, 5).gens(),
            &[(0, 6), (1, 3), (2, 2), (3, 1), (6, 0)]
        );
    }

    #[test]
    fn report_for_trefoil_and_torus34() {
        let r = unknotting_report(&builders::trefoil()).unwrap();
        assert_eq!(r.nu_minus, 1);
        assert_eq!(r.nu_minus_mirror, 0);
        assert_eq!(r.ideal_seq, vec![0, 1]);
        assert_eq!(r.ideal_seq_mirror, vec![0]);
        assert_eq!((r.t_minus, r.t_plus, r.t), (0, 1, 1));
        assert_eq!((r.t_hat, r.t_hat_mirror), (1, 1));
        assert_eq!(r.frak_a, 1);
        assert_eq!(r.genus_upper, 1);
        assert_eq!((r.u_lower, r.u_minus_lower, r.u_plus_lower), (1, 1, 0));
        assert_eq!(r.alt_lower, 0);

        let r = unknotting_report(&builders::torus_knot(3, 4).unwrap()).unwrap();
        assert_eq!(r.nu_minus, 3);
        assert_eq!((r.t_minus, r.t_plus), (0, 3));
        assert_eq!((r.u_lower, r.u_minus_lower, r.u_plus_lower), (3, 3, 0));
        assert_eq!(r.frak_a, 2);
        // ν⁻ − 𝔞 = 1 and 𝔱̂ − 1 = 1, but min{𝔱 − 1, ν⁻} = 2 wins.
        assert_eq!(r.alt_lower, 2);
    }

    #[test]
    fn alt_bound_certificates() {
        let (v, c) = alt_lower(&builders::torus_knot(3, 4).unwrap()).unwrap();
        assert_eq!((v, c), (2, AltCertificate::CappedTorsion));
        let twelve = KnotComplex::direct_sum(
            &builders::example_12n404_summand(),
            &builders::unknot(),
        );
        let (v, c) = alt_lower(&twelve).unwrap();
        assert_eq!((v, c), (1, AltCertificate::THatMinusOne));
        let (v, _) = alt_lower(&builders::unknot()).unwrap();
        assert_eq!(v, 0);
    }

    #[test]
    fn gordian_bounds() {
        let trefoil = builders::trefoil();
        let unknot = builders::unknot();
        let b = gordian_lower(&trefoil, &unknot).unwrap();
        assert_eq!(b.bound, 1);
        assert_eq!(b.certificate, GordianCertificate::DepthSum);
        let b = gordian_lower(&builders::example_cable_2_3_2_neg1(), &trefoil).unwrap();
        assert!(b.bound >= 2);
        assert_eq!(b.certificate, GordianCertificate::TorsionMinus);
        let b = gordian_lower(&trefoil, &trefoil).unwrap();
        assert_eq!(b.bound, 0);
    }

    #[test]
    fn adjacency_checks() {
        let r = torus_adjacency_check(2, 3, 2, 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.u_gap, 1);
        let r = torus_adjacency_check(3, 4, 2, 7).unwrap();
        assert!(!r.pass);
        assert_eq!(
            r.failure,
            Some(AdjacencyFailure {
                check: AdjacencyCheck::ShiftedContainment,
                witness: (1, 1),
            })
        );
        let r = torus_adjacency_check(2, 5, 2, 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.u_gap, 0);
        assert_eq!(
            torus_adjacency_check(2, 5, 2, 3),
            Err(InvariantError::NotAscending)
        );
    }
}
