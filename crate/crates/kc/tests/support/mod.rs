//! Shared helpers for the integration suites: seeded random generators for
//! graded matrices and complexes (built from elementary pieces, then
//! disguised by homogeneous base changes), the builder corpus, and the
//! invariant fingerprint used by the invariance tests.

// Each integration test target compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use kc::builders;
use kc::complex::{KnotComplex, Monomial};
use kc::homology::{self, Analysis, StableKind, TorsionClassInfo};
use kc::polyalg::{Exp, GradedMonoMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Random graded matrices with known homology
// ---------------------------------------------------------------------------

/// A random valid graded matrix together with the homology it was built to
/// have: `free_rank` free classes and torsion of the listed orders.
pub struct RandomMatrix {
    pub matrix: GradedMonoMatrix,
    pub free_rank: usize,
    pub torsion_orders: Vec<Exp>,
}

/// Build a random valid matrix as a direct sum of elementary pieces (free
/// slots and two-slot pairs `src → tᵉ·tgt`), then hide the block structure
/// behind random grading-homogeneous column operations. The law uses an even
/// scale and an odd shift, so no operation can ever create a diagonal entry.
pub fn random_graded_matrix(rng: &mut impl Rng, max_gens: usize, max_exp: Exp) -> RandomMatrix {
    let scale = *[-2i64, 2, -4].choose(rng).unwrap();
    let shift = *[-1i64, 1, 3].choose(rng).unwrap();
    let n = rng.gen_range(0..=max_gens);
    let mut slots: Vec<usize> = (0..n).collect();
    slots.shuffle(rng);

    let pairs = if n < 2 { 0 } else { rng.gen_range(0..=n / 2) };
    let mut grades = vec![0i64; n];
    let mut entries: BTreeMap<(usize, usize), Exp> = BTreeMap::new();
    let mut torsion_orders = Vec::new();
    let mut slots = slots.into_iter();
    for _ in 0..pairs {
        let src = slots.next().unwrap();
        let tgt = slots.next().unwrap();
        let e = rng.gen_range(0..=max_exp);
        grades[tgt] = rng.gen_range(-6..=6);
        grades[src] = grades[tgt] + scale * i64::from(e) + shift;
        entries.insert((tgt, src), e);
        if e > 0 {
            torsion_orders.push(e);
        }
    }
    let mut free_rank = 0;
    for s in slots {
        grades[s] = rng.gen_range(-6..=6);
        free_rank += 1;
    }

    let toggle = |entries: &mut BTreeMap<(usize, usize), Exp>, key: (usize, usize), e: Exp| {
        assert_ne!(key.0, key.1, "law forbids diagonal entries");
        match entries.remove(&key) {
            Some(prev) => assert_eq!(prev, e, "law pins the exponent per slot"),
            None => {
                entries.insert(key, e);
            }
        }
    };

    // Base change xᵢ ← xᵢ + tᵏ·xⱼ, legal when grade(i) = grade(j) + scale·k:
    // column i gains tᵏ·column j, row j gains tᵏ·row i.
    for _ in 0..rng.gen_range(0..=12) {
        let mut candidates = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let diff = grades[i] - grades[j];
                if i != j && diff % scale == 0 && (0..=i64::from(max_exp)).contains(&(diff / scale))
                {
                    candidates.push((i, j, (diff / scale) as Exp));
                }
            }
        }
        let Some(&(i, j, k)) = candidates.choose(rng) else {
            break;
        };
        let col_j: Vec<(usize, Exp)> = entries
            .iter()
            .filter(|((_, c), _)| *c == j)
            .map(|((r, _), &e)| (*r, e))
            .collect();
        let row_i: Vec<(usize, Exp)> = entries
            .iter()
            .filter(|((r, _), _)| *r == i)
            .map(|((_, c), &e)| (*c, e))
            .collect();
        for (r, e) in col_j {
            toggle(&mut entries, (r, i), e + k);
        }
        for (c, e) in row_i {
            toggle(&mut entries, (j, c), e + k);
        }
    }

    let matrix = GradedMonoMatrix::new(grades, scale, shift, entries)
        .expect("base changes preserve the grade law");
    torsion_orders.sort_unstable();
    RandomMatrix {
        matrix,
        free_rank,
        torsion_orders,
    }
}

// ---------------------------------------------------------------------------
// Random complexes
// ---------------------------------------------------------------------------

/// Random valid complex: free generators plus arrow pairs `src → uᵃwᵇ·tgt`,
/// disguised by homogeneous base changes xᵢ ← xᵢ + uᵖwᵠ·xⱼ (legal when the
/// bigradings match: μ(i) = μ(j) − 2p, A(i) = A(j) − p + q).
pub fn random_complex(rng: &mut impl Rng) -> KnotComplex {
    let pairs = rng.gen_range(0..=3);
    let singles = rng.gen_range(usize::from(pairs == 0)..=2);
    let mut gens: Vec<(String, i64, i64)> = Vec::new();
    let mut arrows: Vec<(usize, usize, Exp, Exp)> = Vec::new();
    for p in 0..pairs {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let (maslov, alexander) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let tgt = gens.len();
        gens.push((format!("t{p}"), maslov, alexander));
        let src = gens.len();
        gens.push((
            format!("s{p}"),
            maslov - 2 * i64::from(a) + 1,
            alexander - i64::from(a) + i64::from(b),
        ));
        arrows.push((src, tgt, a, b));
    }
    for f in 0..singles {
        gens.push((format!("f{f}"), rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
    }
    let mut k = KnotComplex::from_parts(gens, arrows);

    for _ in 0..rng.gen_range(0..=10) {
        let n = k.len();
        let mut candidates = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let dm = k.maslov(j) - k.maslov(i);
                let p = dm / 2;
                if dm % 2 != 0 || !(0..=3).contains(&p) {
                    continue;
                }
                let q = k.alexander(i) - k.alexander(j) + p;
                if (0..=3).contains(&q) {
                    candidates.push((i, j, p as Exp, q as Exp));
                }
            }
        }
        let Some(&(i, j, p, q)) = candidates.choose(rng) else {
            break;
        };
        let m = Monomial::new(p, q);
        // d(xᵢ) gains uᵖwᵠ·d(xⱼ); arrows into xᵢ re-express through xⱼ.
        let from_j: Vec<(usize, Monomial)> = k
            .arrows()
            .filter(|&(f, _, _)| f == j)
            .map(|(_, t, a)| (t, a))
            .collect();
        let into_i: Vec<(usize, Monomial)> = k
            .arrows()
            .filter(|&(_, t, _)| t == i)
            .map(|(f, _, a)| (f, a))
            .collect();
        for (t, a) in from_j {
            k.add_arrow(i, t, a.mul(m));
        }
        for (f, a) in into_i {
            k.add_arrow(f, j, a.mul(m));
        }
    }
    k.validate().expect("base changes preserve validity");
    k
}

/// Rebuild `k` with its generators in a random order.
pub fn permuted(k: &KnotComplex, rng: &mut impl Rng) -> KnotComplex {
    let n = k.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // order[new] = old; invert to map old indices to new.
    let mut new_of_old = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old] = new;
    }
    let gens: Vec<(String, i64, i64)> = order
        .iter()
        .map(|&old| {
            let g = &k.generators()[old];
            (g.name.clone(), g.grading.maslov, g.grading.alexander)
        })
        .collect();
    let arrows: Vec<(usize, usize, Exp, Exp)> = k
        .arrows()
        .map(|(f, t, m)| (new_of_old[f], new_of_old[t], m.a, m.b))
        .collect();
    KnotComplex::from_parts(gens, arrows)
}

// ---------------------------------------------------------------------------
// Builder corpus and fingerprints
// ---------------------------------------------------------------------------

/// Every named builder, including the torsion-only summand.
pub fn corpus() -> Vec<(&'static str, KnotComplex)> {
    let mut list = knot_corpus();
    list.push(("12n404C", builders::example_12n404_summand()));
    list
}

/// The builders whose stable slice has a free class (knot-type inputs).
pub fn knot_corpus() -> Vec<(&'static str, KnotComplex)> {
    vec![
        ("trefoil", builders::trefoil()),
        ("mirror trefoil", builders::trefoil().dual()),
        ("figure8", builders::figure_eight()),
        ("torus(2,5)", builders::torus_knot(2, 5).unwrap()),
        ("torus(3,4)", builders::torus_knot(3, 4).unwrap()),
        ("cableA", builders::example_cable_2_3_2_neg1()),
        ("cableB", builders::example_neg_cable_2_3_2_neg3()),
        ("sumC", builders::example_sum_summand_c()),
        ("alt(2)", builders::alternating_model(2, &[])),
        ("cij(1,1)", builders::virtual_cij(1, 1)),
    ]
}

/// Everything the calculator can say about a complex, as one comparable
/// value. Two chain homotopy equivalent complexes must agree on all of it.
#[derive(Debug, PartialEq, Eq)]
pub enum Fingerprint {
    KnotLike {
        s0: i64,
        nu_minus: i64,
        ideal: Vec<u32>,
        t_minus: u32,
        t_plus: u32,
        t_hat: u32,
        profile: Vec<TorsionClassInfo>,
        hat: (usize, Vec<Exp>),
    },
    TorsionOnly {
        s0: i64,
        t_minus: u32,
        t_plus: u32,
        profile: Vec<TorsionClassInfo>,
        hat: (usize, Vec<Exp>),
    },
}

pub fn fingerprint(k: &KnotComplex) -> Fingerprint {
    let analysis = Analysis::new(k).expect("corpus complexes analyze");
    let mut profile = analysis.torsion_profile().expect("profile").classes;
    profile.sort_unstable();
    let t_minus = homology::t_minus(k).expect("t_minus");
    let t_plus = homology::t_plus(k).expect("t_plus");
    let mut hat = homology::hat_homology(k).expect("hat");
    hat.1.sort_unstable();
    match analysis.kind() {
        StableKind::KnotLike => Fingerprint::KnotLike {
            s0: analysis.s0(),
            nu_minus: analysis.nu_minus().expect("nu"),
            ideal: analysis.ideal_sequence().expect("ideal").0,
            t_minus,
            t_plus,
            t_hat: homology::t_hat(k).expect("t_hat"),
            profile,
            hat,
        },
        StableKind::TorsionOnly => Fingerprint::TorsionOnly {
            s0: analysis.s0(),
            t_minus,
            t_plus,
            profile,
            hat,
        },
    }
}
