use gaussoid::linalg::{
    almost_principal_minor, correlation_of, int, parse_rational, random_correlation, random_square_diagonal_pd, rat,
    relation_of_matrix, solve_couple_entry, Rational, RationalMatrix,
};
use gaussoid::poly::{principal_minor_polynomial, Polynomial};
use gaussoid::{Couple, Error, Permutation, Relation};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Leibniz expansion over all permutations.
fn leibniz(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    let mut total = Rational::zero();
    for p in Permutation::all(n) {
        let img = p.images();
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if img[a] > img[b] {
                    inversions += 1;
                }
            }
        }
        let mut term = Rational::one();
        for (a, &b) in img.iter().enumerate() {
            term *= &m[(a, b)];
        }
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Sylvester's criterion by Leibniz determinants of leading minors.
fn sylvester_pd(m: &RationalMatrix) -> bool {
    (1..=m.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        leibniz(&m.submatrix(&idx, &idx)) > Rational::zero()
    })
}

fn matrix(rows: &[&[(i64, i64)]]) -> RationalMatrix {
    RationalMatrix::from_fractions(rows).unwrap()
}

fn corr3(r12: Rational, r13: Rational, r23: Rational) -> RationalMatrix {
    RationalMatrix::correlation(3, &[r12, r13, r23]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn square(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(rational(), n * n).prop_map(move |v| {
        let rows = v.chunks(n).map(|c| c.to_vec()).collect();
        RationalMatrix::from_rows(rows).unwrap()
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = RationalMatrix> {
    square(n).prop_map(|m| {
        let mut s = m.clone();
        for a in 0..m.rows() {
            for b in 0..a {
                s.set(a, b, m[(b, a)].clone());
            }
        }
        s
    })
}

fn couple4(s: &str) -> Couple {
    Relation::parse(s, 4).unwrap().iter().next().unwrap()
}

#[test]
fn determinant_examples() {
    assert_eq!(RationalMatrix::identity(4).determinant().unwrap(), int(1));
    assert_eq!(matrix(&[&[(1, 1), (1, 2)], &[(1, 2), (1, 1)]]).determinant().unwrap(), rat(3, 4));
}

#[test]
fn three_by_three_minor_matches_expansion() {
    let f = Polynomial::parse("1 - r12^2 - r13^2 - r23^2 + 2*r12*r13*r23").unwrap();
    assert_eq!(principal_minor_polynomial(&[0, 1, 2]), f);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let r = random_correlation(3, &mut rng);
        assert_eq!(r.determinant().unwrap(), f.eval_matrix(&r).unwrap());
    }
}

#[test]
fn positive_definiteness_examples() {
    assert!(RationalMatrix::identity(3).is_positive_definite().unwrap());
    assert!(!matrix(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]).is_positive_definite().unwrap());
    assert!(corr3(int(0), int(0), rat(1, 2)).is_positive_definite().unwrap());
}

#[test]
fn minor_examples() {
    let r = RationalMatrix::correlation(4, &[rat(1, 5), rat(1, 3), rat(1, 7), rat(2, 5), rat(-1, 4), rat(1, 6)]).unwrap();
    // 12|3 is r12 - r13 r23
    let expected = &r[(0, 1)] - &(&r[(0, 2)] * &r[(1, 2)]);
    assert_eq!(almost_principal_minor(&r, &couple4("12|3")).unwrap(), expected);
    assert!(almost_principal_minor(&RationalMatrix::identity(4), &couple4("13|24")).unwrap().is_zero());
    let m = matrix(&[&[(1, 1), (1, 2)], &[(1, 2), (1, 1)]]);
    let c12 = Couple::new(2, 0, 1, 0).unwrap();
    assert_eq!(almost_principal_minor(&m, &c12).unwrap(), rat(1, 2));
}

#[test]
fn relation_examples() {
    assert_eq!(relation_of_matrix(&RationalMatrix::identity(4)).unwrap(), Relation::full(4).unwrap());
    let r = corr3(int(0), int(0), rat(1, 2));
    assert_eq!(relation_of_matrix(&r).unwrap(), Relation::parse("12,13,12|3,13|2", 3).unwrap());
    let bad = matrix(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
    assert_eq!(relation_of_matrix(&bad), Err(Error::NotPositiveDefinite));
}

#[test]
fn inverse_and_correlation_examples() {
    assert_eq!(RationalMatrix::identity(3).inverse().unwrap(), RationalMatrix::identity(3));
    let m = matrix(&[&[(1, 1), (1, 2)], &[(1, 2), (1, 1)]]);
    assert_eq!(m.inverse().unwrap(), matrix(&[&[(4, 3), (-2, 3)], &[(-2, 3), (4, 3)]]));
    let s = matrix(&[&[(4, 1), (2, 1)], &[(2, 1), (4, 1)]]);
    assert_eq!(correlation_of(&s).unwrap(), m);
    assert_eq!(correlation_of(&m).unwrap(), m);
    let nonsquare = matrix(&[&[(2, 1), (1, 2)], &[(1, 2), (1, 1)]]);
    assert!(matches!(correlation_of(&nonsquare), Err(Error::NonSquareDiagonal { .. })));
    assert_eq!(matrix(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]).inverse(), Err(Error::Singular));
}

#[test]
fn solve_examples() {
    let mut r = RationalMatrix::correlation(3, &[int(0), rat(1, 2), rat(1, 3)]).unwrap();
    let c = Couple::new(3, 0, 1, 0b100).unwrap();
    let v = solve_couple_entry(&r, &c).unwrap();
    assert_eq!(v, rat(1, 6));
    r.set_sym(0, 1, v);
    assert!(almost_principal_minor(&r, &c).unwrap().is_zero());
    assert_eq!(solve_couple_entry(&r, &Couple::new(3, 0, 1, 0).unwrap()).unwrap(), int(0));
}

#[test]
fn solved_witness_for_single_couple() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let c = couple4("23|14");
    let target = Relation::from_couples(4, [c]).unwrap();
    let mut found = false;
    for _ in 0..200 {
        let mut r = random_correlation(4, &mut rng);
        let v = solve_couple_entry(&r, &c).unwrap();
        r.set_sym(1, 2, v);
        if r.is_positive_definite().unwrap() && relation_of_matrix(&r).unwrap() == target {
            found = true;
            break;
        }
    }
    assert!(found);
}

#[test]
fn hadamard_of_pd_is_pd() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let a = random_correlation(n, &mut rng);
        let b = random_correlation(n, &mut rng);
        let h = a.hadamard(&b).unwrap();
        assert!(h.is_symmetric() && h.is_positive_definite().unwrap());
    }
    let a = random_correlation(4, &mut rng);
    let id = RationalMatrix::identity(4);
    assert_eq!(a.hadamard(&id).unwrap(), id);
}

#[test]
fn inverse_gives_dual_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..50 {
        let r = random_correlation(4, &mut rng);
        let l = relation_of_matrix(&r).unwrap();
        assert_eq!(relation_of_matrix(&r.inverse().unwrap()).unwrap(), l.dual());
    }
}

#[test]
fn correlation_preserves_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..50 {
        let s = random_square_diagonal_pd(4, &mut rng);
        let r = correlation_of(&s).unwrap();
        assert!(r.has_unit_diagonal());
        assert_eq!(relation_of_matrix(&r).unwrap(), relation_of_matrix(&s).unwrap());
    }
}

#[test]
fn matrix_file_format() {
    let m = RationalMatrix::parse("# comment\nn=2\n1 1/2\n1/2 1\n").unwrap();
    assert_eq!(m, matrix(&[&[(1, 1), (1, 2)], &[(1, 2), (1, 1)]]));
    assert_eq!(RationalMatrix::parse(&m.to_string()).unwrap(), m);
    assert!(RationalMatrix::parse("n=2\n1 x\n0 1\n").is_err());
    assert!(RationalMatrix::parse("n=3\n1 0\n0 1\n").is_err());
    assert!(parse_rational("3/0").is_err());
    assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
}

proptest! {
    #[test]
    fn determinant_matches_leibniz(m in square(4)) {
        prop_assert_eq!(m.determinant().unwrap(), leibniz(&m));
    }

    #[test]
    fn rank_is_full_iff_nonzero_determinant(m in square(3)) {
        prop_assert_eq!(m.rank() == 3, !leibniz(&m).is_zero());
    }

    #[test]
    fn pd_matches_sylvester(m in symmetric(3)) {
        prop_assert_eq!(m.is_positive_definite().unwrap(), sylvester_pd(&m));
    }

    #[test]
    fn inverse_is_two_sided(m in square(3)) {
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(3));
            prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(3));
        } else {
            prop_assert!(leibniz(&m).is_zero());
        }
    }

    #[test]
    fn minor_matches_leibniz_submatrix(m in symmetric(4), slot in 0usize..24) {
        let c = Couple::from_slot(4, slot);
        let (i, j) = c.pair();
        let mut rows = c.cond_indices();
        let mut cols = rows.clone();
        rows.push(i);
        cols.push(j);
        rows.sort_unstable();
        cols.sort_unstable();
        let sub = m.submatrix(&rows, &cols);
        prop_assert_eq!(almost_principal_minor(&m, &c).unwrap().is_zero(), leibniz(&sub).is_zero());
    }

    #[test]
    fn relation_is_permutation_equivariant(seed in any::<u64>(), k in 0usize..24) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_correlation(4, &mut rng);
        let p = &Permutation::all(4)[k];
        let l = relation_of_matrix(&r).unwrap();
        prop_assert_eq!(relation_of_matrix(&r.permuted(p).unwrap()).unwrap(), l.permuted(p).unwrap());
    }
}
