use proptest::prelude::*;

use super::*;
use crate::braid::BraidWord;
use crate::qring::{parse_laurent, Ring};

fn d(s: &str) -> YoungDiagram {
    s.parse().unwrap()
}

fn word(m: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(m, letters.to_vec()).unwrap()
}

fn poly(s: &str) -> LaurentPoly {
    parse_laurent(s).unwrap()
}

fn ext(num: &str, den: &str) -> ExtScalar {
    ExtScalar::rational(RatFuncQ::new(poly(num), poly(den)))
}

fn ext_radical(n: usize, num: &str, den: &str) -> ExtScalar {
    ExtScalar::radical(n).scale(&RatFuncQ::new(poly(num), poly(den)))
}

fn det<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.dim();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = R::zero();
    for j in 0..n {
        let minor = Matrix::from_rows(
            (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
                .collect(),
        );
        let term = m.get(0, j).mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn all_nontrivial_diagrams() -> Vec<YoungDiagram> {
    (2..=MAX_STRANDS).flat_map(YoungDiagram::partitions).collect()
}

const KNOT_8_3: [i32; 10] = [1, 1, 2, -1, -3, 2, -3, -4, 3, -4];
const KNOT_6_1: [i32; 7] = [-1, 2, -3, -1, 2, 3, 3];

#[test]
fn three_strand_matrices_match_closed_form() {
    let set = build_rmatrices(3, &d("[2,1]")).unwrap();
    let r1 = Matrix::from_diagonal(vec![ext("q", "1"), ext("-q^-1", "1")]);
    assert_eq!(set.matrices[0], r1);
    let c = "q + q^-1";
    let r2 = Matrix::from_rows(vec![
        vec![ext("-q^-2", c), ext_radical(2, "1", c)],
        vec![ext_radical(2, "1", c), ext("q^2", c)],
    ]);
    assert!(set.matrices[1].equal_up_to_signature(&r2));
}

#[test]
fn four_and_five_strand_entries() {
    let set = build_rmatrices(4, &d("[2,2]")).unwrap();
    let c = "q + q^-1";
    let r2 = Matrix::from_rows(vec![
        vec![ext("-1", "q^2*(q + q^-1)"), ext_radical(2, "-1", c)],
        vec![ext_radical(2, "-1", c), ext("q^2", c)],
    ]);
    assert!(set.matrices[1].equal_up_to_signature(&r2));

    let set = build_rmatrices(5, &d("[4,1]")).unwrap();
    assert_eq!(*set.matrices[3].get(0, 0), ext("-1", "q*(1 + q^2)*(1 + q^4)"));
}

#[test]
fn determinants_and_power_traces() {
    let r31 = build_rmatrices(4, &d("[3,1]")).unwrap();
    let r41 = build_rmatrices(5, &d("[4,1]")).unwrap();
    for r in &r31.matrices {
        assert_eq!(det(r), ExtScalar::from_poly(poly("-q")));
        for n in 1..=4u32 {
            let expected = poly(&format!("2*q^{n} + (-q^-1)^{n}"));
            assert_eq!(r.pow(n).trace(), ExtScalar::from_poly(expected));
        }
    }
    for r in &r41.matrices {
        assert_eq!(det(r), ExtScalar::from_poly(poly("-q^2")));
        for n in 1..=4u32 {
            let expected = poly(&format!("3*q^{n} + (-1)^{n}*q^-{n}"));
            assert_eq!(r.pow(n).trace(), ExtScalar::from_poly(expected));
        }
    }
}

#[test]
fn braid_relations_hold_everywhere() {
    for q in all_nontrivial_diagrams() {
        let set = build_rmatrices(q.size(), &q).unwrap();
        assert!(satisfies_braid_relations(set.generators()), "orthogonal {q}");
        assert!(satisfies_braid_relations(&seminormal(&q).unwrap()), "seminormal {q}");
    }
}

#[test]
fn eigenvalues_are_q_and_minus_inverse_q() {
    for q in all_nontrivial_diagrams() {
        let set = build_rmatrices(q.size(), &q).unwrap();
        let n = set.dim();
        let qq = Matrix::scalar(n, ExtScalar::from_poly(LaurentPoly::q()));
        let qi = Matrix::scalar(n, ExtScalar::from_poly(LaurentPoly::q_pow(-1)));
        for (r, inv) in set.matrices.iter().zip(&set.inverses) {
            let annihilated = r.sub(&qq).mul(&r.add(&qi));
            assert_eq!(annihilated, Matrix::zero(n), "{q}");
            assert_eq!(r.mul(inv), Matrix::identity(n), "{q}");
        }
    }
}

#[test]
fn worked_racah_coefficients() {
    assert_eq!(racah_coeff(&word(3, &[1, 2, 1, 2]), &d("[2,1]")).unwrap(), poly("-1"));
    assert_eq!(
        racah_coeff(&word(3, &[1, -2, 1, -2]), &d("[2,1]")).unwrap(),
        poly("q^4 - 2q^2 + 1 - 2q^-2 + q^-4")
    );
    let b61 = word(4, &KNOT_6_1);
    assert_eq!(racah_coeff(&b61, &d("[2,2]")).unwrap(), poly("q - q^-1"));
    let b83 = word(5, &KNOT_8_3);
    assert_eq!(
        racah_coeff(&b83, &d("[3,1,1]")).unwrap(),
        poly("-2q^6 + 3q^4 - q^2 + 1 - q^-2 + 3q^-4 - 2q^-6")
    );
}

#[test]
fn one_dimensional_representations() {
    let b = word(6, &[1, 2, -3, 4, 5, 5]);
    assert_eq!(racah_coeff(&b, &YoungDiagram::row(6)).unwrap(), LaurentPoly::q_pow(4));
    assert_eq!(
        racah_coeff(&b, &YoungDiagram::column(6)).unwrap(),
        LaurentPoly::q_pow(-4)
    );
    assert!(racah_coeff(&b, &d("[5,1]")).is_err());
    assert!(racah_coeff(&b, &d("[2,1]")).is_err());
}

#[test]
fn twist_representations() {
    let f3 = twist_rep(3, &d("[2,1]"), Twist::Full).unwrap();
    assert_eq!(f3, Matrix::identity(2));
    let f4 = twist_rep(4, &d("[3,1]"), Twist::Full).unwrap();
    assert_eq!(f4, Matrix::scalar(3, ExtScalar::from_poly(LaurentPoly::q_pow(4))));
    let e5 = twist_rep(5, &d("[3,1,1]"), Twist::JucysMurphy).unwrap();
    let mut diag = vec![ExtScalar::from_poly(LaurentPoly::q_pow(-4)); 3];
    diag.extend(vec![ExtScalar::from_poly(LaurentPoly::q_pow(4)); 3]);
    assert_eq!(e5, Matrix::from_diagonal(diag));
    for q in all_nontrivial_diagrams() {
        let m = q.size();
        for twist in [Twist::Full, Twist::FullSub, Twist::JucysMurphy] {
            if twist == Twist::FullSub && m < 3 {
                continue;
            }
            let rep = twist_rep(m, &q, twist).unwrap();
            let expected: Vec<ExtScalar> = twist_eigenvalues(&q, twist)
                .into_iter()
                .map(ExtScalar::from_poly)
                .collect();
            assert_eq!(rep.diagonal(), expected, "{twist:?} on {q}");
        }
    }
}

#[test]
fn transposed_diagrams_agree_with_direct_traces() {
    let words = [word(4, &KNOT_6_1), word(5, &KNOT_8_3), word(3, &[1, 1, 1, -2, 1, -2])];
    for b in &words {
        for q in YoungDiagram::partitions(b.strands()) {
            if q.num_rows() == 1 || q.rows()[0] == 1 {
                continue;
            }
            assert_eq!(racah_coeff(b, &q).unwrap(), racah_coeff_direct(b, &q).unwrap(), "{q}");
        }
    }
}

#[test]
fn long_runs_use_the_quadratic_relation() {
    let q = d("[2,1]");
    let gens = seminormal(&q).unwrap();
    let direct = (0..7).fold(Matrix::identity(2), |acc, _| gens[0].right_mul(&acc));
    assert_eq!(gens[0].power(7).to_matrix(), direct);
    let inv = gens[0].power(-1).to_matrix();
    assert_eq!(inv.mul(&gens[0].to_matrix()), Matrix::identity(2));
    assert_eq!(hecke_power_coeffs(2), (crate::qring::qbracket(1), LaurentPoly::one()));
}

fn random_word(m: usize) -> impl Strategy<Value = BraidWord> {
    let letter = (1..m as i32, any::<bool>()).prop_map(|(k, s)| if s { k } else { -k });
    prop::collection::vec(letter, 1..14).prop_map(move |v| BraidWord::new(m, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orthogonal_and_seminormal_traces_agree(b in random_word(4)) {
        for q in YoungDiagram::partitions(4) {
            prop_assert_eq!(racah_coeff(&b, &q).unwrap(), racah_coeff_orthogonal(&b, &q).unwrap());
        }
    }

    #[test]
    fn five_strand_routes_agree(b in random_word(5)) {
        for q in [d("[4,1]"), d("[3,2]"), d("[3,1,1]")] {
            prop_assert_eq!(racah_coeff(&b, &q).unwrap(), racah_coeff_orthogonal(&b, &q).unwrap());
        }
    }

    #[test]
    fn traces_are_invariant_under_rotation(b in random_word(5), k in 0usize..14) {
        for q in YoungDiagram::partitions(5) {
            prop_assert_eq!(racah_coeff(&b, &q).unwrap(), racah_coeff(&b.rotate(k), &q).unwrap());
        }
    }
}
