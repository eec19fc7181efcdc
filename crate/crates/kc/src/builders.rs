//! Ready-made chain complexes: staircases, torus knots, the figure-eight
//! square model, and a small library of worked examples with known
//! invariants.

use thiserror::Error;

use crate::complex::KnotComplex;
use crate::polyalg::{Exp, IntLaurentPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuilderError {
    #[error("bad staircase Alexander sequence: {0}")]
    BadStaircase(String),
    #[error("torus parameters ({p}, {q}) need 1 ≤ p < q")]
    BadTorusParameters { p: u32, q: u32 },
    #[error("torus parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: u32, q: u32 },
    #[error("Alexander polynomial is not of staircase type: {0}")]
    NonAlternatingAlexander(String),
}

/// Staircase complex on generators x0, …, x2n with the given Alexander
/// gradings: every odd-index generator maps to both neighbours,
///
/// ```text
/// d(x_i) = u^(a_{i−1} − a_i) · x_{i−1} + w^(a_i − a_{i+1}) · x_{i+1}
/// ```
///
/// The sequence must be strictly decreasing, of odd length, and
/// antisymmetric (a_i = −a_{2n−i}); the top generator is put in Maslov
/// grading 0 and homogeneity forces the rest.
pub fn staircase(alex: &[i64]) -> Result<KnotComplex, BuilderError> {
    let n = alex.len();
    if n.is_multiple_of(2) || n == 0 {
        return Err(BuilderError::BadStaircase(format!(
            "length {} is not odd",
            n
        )));
    }
    if !alex.windows(2).all(|p| p[0] > p[1]) {
        return Err(BuilderError::BadStaircase(
            "sequence is not strictly decreasing".into(),
        ));
    }
    if (0..n).any(|i| alex[i] != -alex[n - 1 - i]) {
        return Err(BuilderError::BadStaircase(
            "sequence is not antisymmetric".into(),
        ));
    }
    let mut maslov = vec![0i64; n];
    for i in 1..n {
        maslov[i] = if i % 2 == 1 {
            maslov[i - 1] - 2 * (alex[i - 1] - alex[i]) + 1
        } else {
            maslov[i - 1] - 1
        };
    }
    let gens = (0..n).map(|i| (format!("x{}", i), maslov[i], alex[i]));
    let arrows = (1..n).step_by(2).flat_map(|i| {
        let up = (alex[i - 1] - alex[i]) as Exp;
        let down = (alex[i] - alex[i + 1]) as Exp;
        [(i, i - 1, up, 0), (i, i + 1, 0, down)]
    });
    Ok(KnotComplex::from_parts(gens, arrows))
}

/// One generator in bigrading (0, 0) and no differential.
pub fn unknot() -> KnotComplex {
    staircase(&[0]).unwrap()
}

/// The right-handed trefoil staircase.
pub fn trefoil() -> KnotComplex {
    staircase(&[1, 0, -1]).unwrap()
}

/// Staircase model of the positive torus knot T(p,q), extracted from its
/// Alexander polynomial
///
/// ```text
/// Δ(t) = (t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))
/// ```
///
/// centred so that Δ(t) = Δ(1/t). For coprime parameters the coefficients
/// alternate ±1 and the exponent sequence is exactly the staircase data;
/// T(1, q) degenerates to the unknot.
pub fn torus_knot(p: u32, q: u32) -> Result<KnotComplex, BuilderError> {
    if p < 1 || q <= p {
        return Err(BuilderError::BadTorusParameters { p, q });
    }
    if gcd(p, q) != 1 {
        return Err(BuilderError::NotCoprime { p, q });
    }
    let cyc = |k: u32| {
        IntLaurentPoly::from_coeffs([(i64::from(k), 1), (0, -1)]) // t^k − 1
    };
    let num = cyc(p * q).mul(&cyc(1));
    let den = cyc(p).mul(&cyc(q));
    let delta = num
        .exact_div(&den)
        .expect("cyclotomic quotient is a polynomial for coprime p < q");
    let half_span = i64::from((p - 1) * (q - 1)) / 2;
    let delta = delta.shifted(-half_span);
    debug_assert!(delta.is_symmetric());
    let terms: Vec<(i64, i64)> = delta.terms().collect();
    if terms.len().is_multiple_of(2) {
        return Err(BuilderError::NonAlternatingAlexander(format!(
            "{} terms",
            terms.len()
        )));
    }
    for (k, &(_, c)) in terms.iter().rev().enumerate() {
        let want = if k % 2 == 0 { 1 } else { -1 };
        if c != want {
            return Err(BuilderError::NonAlternatingAlexander(format!(
                "coefficient {} at position {} from the top",
                c, k
            )));
        }
    }
    let alex: Vec<i64> = terms.iter().rev().map(|&(e, _)| e).collect();
    staircase(&alex)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An acyclic four-generator box hung at bigrading (maslov, alexander):
///
/// ```text
/// d(W) = u·Z + w·Y      d(Y) = u·X      d(Z) = w·X
/// ```
///
/// Generator names carry the given suffix so several boxes can coexist in a
/// direct sum.
pub fn square_at(maslov: i64, alexander: i64, suffix: &str) -> KnotComplex {
    let (m, a) = (maslov, alexander);
    KnotComplex::from_parts(
        [
            (format!("X{}", suffix), m, a),
            (format!("Y{}", suffix), m - 1, a - 1),
            (format!("Z{}", suffix), m + 1, a + 1),
            (format!("W{}", suffix), m, a),
        ],
        [(3, 2, 1, 0), (3, 1, 0, 1), (1, 0, 1, 0), (2, 0, 0, 1)],
    )
}

/// Figure-eight model: one box plus a lone generator B in bigrading (0, 0).
pub fn figure_eight() -> KnotComplex {
    square_at(0, 0, "").direct_sum(&KnotComplex::from_parts([("B", 0, 0)], []))
}

/// Model of a thin (alternating-type) complex: a staircase of consecutive
/// steps determined by tau plus one box per listed (maslov, alexander)
/// offset. Negative tau mirrors the staircase; tau = 0 is the unknot.
pub fn alternating_model(tau: i64, squares: &[(i64, i64)]) -> KnotComplex {
    let stair = match tau {
        0 => unknot(),
        t if t > 0 => {
            let alex: Vec<i64> = (-t..=t).rev().collect();
            staircase(&alex).unwrap()
        }
        t => {
            let alex: Vec<i64> = (t..=-t).rev().collect();
            staircase(&alex).unwrap().dual()
        }
    };
    squares
        .iter()
        .enumerate()
        .fold(stair, |acc, (i, &(m, a))| {
            acc.direct_sum(&square_at(m, a, &i.to_string()))
        })
}

/// The six-generator direct summand of the complex of 12n404:
///
/// ```text
/// d(Y_i) = uⁱ w^(2−i) · X      d(Z_i) = u·Y_i + w·Y_{i+1}
/// ```
///
/// Its homology is torsion only, generated by [X] with w² = uw = u² = 0
/// on it.
pub fn example_12n404_summand() -> KnotComplex {
    KnotComplex::from_parts(
        [
            ("X", 0, 0),
            ("Y0", 1, 2),
            ("Y1", -1, 0),
            ("Y2", -3, -2),
            ("Z0", 0, 1),
            ("Z1", -2, -1),
        ],
        [
            (1, 0, 0, 2),
            (2, 0, 1, 1),
            (3, 0, 2, 0),
            (4, 1, 1, 0),
            (4, 2, 0, 1),
            (5, 2, 1, 0),
            (5, 3, 0, 1),
        ],
    )
}

/// The (2,−1) cable of the trefoil: nine generators with
///
/// ```text
/// d(Y_i) = uw·T_i                d(Z_1) = w·T_1      d(Z_2) = u·T_2
/// d(Z_3) = u·T_1 + w·T_2
/// d(X_1) = u·Y_1 + uw·Z_3 + w²·Z_2
/// d(X_2) = u²·Z_1 + uw·Z_3 + w·Y_2
/// ```
pub fn example_cable_2_3_2_neg1() -> KnotComplex {
    KnotComplex::from_parts(
        [
            ("X1", -2, 0),
            ("X2", -2, 0),
            ("Y1", -1, 1),
            ("Y2", -3, -1),
            ("Z1", 1, 2),
            ("Z2", -3, -2),
            ("Z3", -1, 0),
            ("T1", 0, 1),
            ("T2", -2, -1),
        ],
        [
            (2, 7, 1, 1),
            (3, 8, 1, 1),
            (4, 7, 0, 1),
            (5, 8, 1, 0),
            (6, 7, 1, 0),
            (6, 8, 0, 1),
            (0, 2, 1, 0),
            (0, 6, 1, 1),
            (0, 5, 0, 2),
            (1, 4, 2, 0),
            (1, 6, 1, 1),
            (1, 3, 0, 1),
        ],
    )
}

/// Mirror of the (2,−3) cable of the trefoil: eleven generators with
///
/// ```text
/// d(Y_1) = u·T_1       d(Y_2) = w·T_2
/// d(Z_1) = w²·T_1      d(Z_2) = u²·T_2      d(Z_3) = uw·T_1      d(Z_4) = uw·T_2
/// d(X_1) = u·Z_1 + w·Z_3
/// d(X_2) = w·Z_2 + u·Z_4
/// d(X_3) = u·Z_3 + w·Z_4 + uw·Y_1 + uw·Y_2
/// ```
pub fn example_neg_cable_2_3_2_neg3() -> KnotComplex {
    KnotComplex::from_parts(
        [
            ("T1", 0, 1),
            ("T2", -2, -1),
            ("X1", 0, 2),
            ("X2", -4, -2),
            ("X3", -2, 0),
            ("Y1", -1, 0),
            ("Y2", -1, 0),
            ("Z1", 1, 3),
            ("Z2", -5, -3),
            ("Z3", -1, 1),
            ("Z4", -3, -1),
        ],
        [
            (5, 0, 1, 0),
            (6, 1, 0, 1),
            (7, 0, 0, 2),
            (8, 1, 2, 0),
            (9, 0, 1, 1),
            (10, 1, 1, 1),
            (2, 7, 1, 0),
            (2, 9, 0, 1),
            (3, 8, 0, 1),
            (3, 10, 1, 0),
            (4, 9, 1, 0),
            (4, 10, 0, 1),
            (4, 5, 1, 1),
            (4, 6, 1, 1),
        ],
    )
}

/// Nine-generator summand of the complex of T(4,5) # −(2,5)-cable of the
/// trefoil # trefoil:
///
/// ```text
/// d(Y_1) = u·Z_1 + w·Z_2       d(Y_2) = u·Z_3 + w·Z_4
/// d(T)   = u·X_1 + w·X_2
/// d(X_1) = uw·Z_2 + w²·Z_3     d(X_2) = u²·Z_2 + uw·Z_3
/// ```
///
/// Its homology has free part the ideal (u³, u²w, uw², w³) and a torsion
/// class killed by both u and w; the extension between them does not split.
pub fn example_sum_summand_c() -> KnotComplex {
    KnotComplex::from_parts(
        [
            ("X1", 1, 1),
            ("X2", -1, -1),
            ("Y1", 3, 2),
            ("Y2", -1, -2),
            ("Z1", 4, 3),
            ("Z2", 2, 1),
            ("Z3", 0, -1),
            ("Z4", -2, -3),
            ("T", 0, 0),
        ],
        [
            (2, 4, 1, 0),
            (2, 5, 0, 1),
            (3, 6, 1, 0),
            (3, 7, 0, 1),
            (8, 0, 1, 0),
            (8, 1, 0, 1),
            (0, 5, 1, 1),
            (0, 6, 0, 2),
            (1, 5, 2, 0),
            (1, 6, 1, 1),
        ],
    )
}

/// Five-generator virtual complex with prescribed invariants
/// (ν⁻ = i, 𝔱⁻ = j, 𝔱̂ = i + j):
///
/// ```text
/// d(Y_1) = uⁱwʲ·X_1 + w^(i+j)·X_2
/// d(Y_2) = u^(i+j)·X_1 + uʲwⁱ·X_2
/// d(Z)   = uʲ·Y_1 + wʲ·Y_2
/// ```
pub fn virtual_cij(i: u32, j: u32) -> KnotComplex {
    assert!(i >= 1 && j >= 1, "parameters must be positive");
    let (il, jl) = (i64::from(i), i64::from(j));
    KnotComplex::from_parts(
        [
            ("X1".to_string(), 0, il),
            ("X2".to_string(), -2 * il, -il),
            ("Y1".to_string(), -2 * il + 1, jl),
            ("Y2".to_string(), -2 * il - 2 * jl + 1, -jl),
            ("Z".to_string(), -2 * il - 2 * jl + 2, 0),
        ],
        [
            (2, 0, i, j),
            (2, 1, 0, i + j),
            (3, 0, i + j, 0),
            (3, 1, j, i),
            (4, 2, j, 0),
            (4, 3, 0, j),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Monomial;

    fn alex_multiset(k: &KnotComplex) -> Vec<i64> {
        k.generators().iter().map(|g| g.grading.alexander).collect()
    }

    fn maslov_multiset(k: &KnotComplex) -> Vec<i64> {
        k.generators().iter().map(|g| g.grading.maslov).collect()
    }

    #[test]
    fn staircase_trefoil_matches_hand_data() {
        let k = trefoil();
        assert_eq!(k.validate(), Ok(()));
        assert_eq!(alex_multiset(&k), vec![1, 0, -1]);
        assert_eq!(maslov_multiset(&k), vec![0, -1, -2]);
        assert_eq!(
            k.arrows().collect::<Vec<_>>(),
            vec![(1, 0, Monomial::new(1, 0)), (1, 2, Monomial::new(0, 1))]
        );
    }

    #[test]
    fn staircase_rejects_bad_data() {
        assert!(matches!(staircase(&[]), Err(BuilderError::BadStaircase(_))));
        assert!(matches!(staircase(&[1, 0]), Err(BuilderError::BadStaircase(_))));
        assert!(matches!(
            staircase(&[1, 1, -1]),
            Err(BuilderError::BadStaircase(_))
        ));
        assert!(matches!(
            staircase(&[2, 0, -1]),
            Err(BuilderError::BadStaircase(_))
        ));
        assert!(staircase(&[2, 0, -2]).is_ok());
    }

    #[test]
    fn torus_knots_from_alexander_polynomials() {
        assert_eq!(torus_knot(2, 3).unwrap(), trefoil());
        assert_eq!(torus_knot(1, 5).unwrap(), unknot());
        let t34 = torus_knot(3, 4).unwrap();
        assert_eq!(t34.validate(), Ok(()));
        assert_eq!(alex_multiset(&t34), vec![3, 2, 0, -2, -3]);
        assert_eq!(maslov_multiset(&t34), vec![0, -1, -2, -5, -6]);
        let t25 = torus_knot(2, 5).unwrap();
        assert_eq!(alex_multiset(&t25), vec![2, 1, 0, -1, -2]);
        assert_eq!(
            torus_knot(2, 4),
            Err(BuilderError::NotCoprime { p: 2, q: 4 })
        );
        assert_eq!(
            torus_knot(3, 2),
            Err(BuilderError::BadTorusParameters { p: 3, q: 2 })
        );
        assert_eq!(
            torus_knot(0, 2),
            Err(BuilderError::BadTorusParameters { p: 0, q: 2 })
        );
    }

    #[test]
    fn torus_knot_genus_matches_formula() {
        for (p, q) in [(2u32, 3u32), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)] {
            let k = torus_knot(p, q).unwrap();
            assert_eq!(k.validate(), Ok(()));
            assert_eq!(
                k.genus_upper(),
                i64::from((p - 1) * (q - 1)) / 2,
                "genus of T({}, {})",
                p,
                q
            );
        }
    }

    #[test]
    fn figure_eight_is_box_plus_generator() {
        let k = figure_eight();
        assert_eq!(k.validate(), Ok(()));
        assert_eq!(k.len(), 5);
        assert_eq!(k.genus_upper(), 1);
        assert_eq!(alex_multiset(&k), vec![0, -1, 1, 0, 0]);
    }

    #[test]
    fn alternating_model_combines_pieces() {
        let k = alternating_model(-1, &[(0, 0)]);
        assert_eq!(k.validate(), Ok(()));
        assert_eq!(k.len(), 7);
        // Mirrored staircase plus one box; tau = 0 leaves the unknot.
        assert_eq!(alternating_model(0, &[]).len(), 1);
        let two_boxes = alternating_model(2, &[(0, 0), (1, 1)]);
        assert_eq!(two_boxes.validate(), Ok(()));
        assert_eq!(two_boxes.len(), 13);
    }

    #[test]
    fn example_complexes_are_valid() {
        let k404 = example_12n404_summand();
        assert_eq!(k404.validate(), Ok(()));
        assert_eq!(alex_multiset(&k404), vec![0, 2, 0, -2, 1, -1]);

        let cable = example_cable_2_3_2_neg1();
        assert_eq!(cable.validate(), Ok(()));
        assert_eq!(alex_multiset(&cable), vec![0, 0, 1, -1, 2, -2, 0, 1, -1]);
        assert_eq!(cable.genus_upper(), 2);

        let neg_cable = example_neg_cable_2_3_2_neg3();
        assert_eq!(neg_cable.validate(), Ok(()));
        assert_eq!(
            alex_multiset(&neg_cable),
            vec![1, -1, 2, -2, 0, 0, 0, 3, -3, 1, -1]
        );
        assert_eq!(neg_cable.genus_upper(), 3);

        let sum = example_sum_summand_c();
        assert_eq!(sum.validate(), Ok(()));
        assert_eq!(alex_multiset(&sum), vec![1, -1, 2, -2, 3, 1, -1, -3, 0]);
        assert_eq!(sum.genus_upper(), 3);

        let cij = virtual_cij(1, 2);
        assert_eq!(cij.validate(), Ok(()));
        assert_eq!(alex_multiset(&cij), vec![1, -1, 2, -2, 0]);
    }
}
