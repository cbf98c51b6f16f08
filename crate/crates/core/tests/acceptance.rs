//! Acceptance run: one PASS/FAIL line per criterion, every comparison exact.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hzknot::braid::torus_braid;
use hzknot::families::{pretzel_braid, torus_alexander, verify_family, verify_torus};
use hzknot::homfly::{alexander, homfly, jones};
use hzknot::hz::{factorise, hz_transform, standard_beta};
use hzknot::qring::{parse_laurent, parse_laurent_a};
use hzknot::rmatrix::{
    build_rmatrices, racah_coeff, satisfies_braid_relations, seminormal_generators, twist_eigenvalues, twist_rep,
    Matrix, Orientation, Twist,
};
use hzknot::{
    decompose, quiver_poly, BraidWord, Decomposition, ExtScalar, FamilyIndex, FixtureOutcome, FixtureSet, HZFunction,
    LaurentPoly, QuiverSeries, YoungDiagram,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Outcome = Result<(), Vec<String>>;

/// A labelled criterion.
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Collects failure messages for one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, label: &str, expected: &T, computed: &T) {
        self.check(expected == computed, || {
            format!("{label}: expected {expected}, computed {computed}")
        });
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Ok(())
        } else {
            Err(self.failures)
        }
    }
}

fn word(m: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(m, letters.to_vec()).unwrap()
}

fn poly(s: &str) -> LaurentPoly {
    parse_laurent(s).unwrap()
}

fn diagram(s: &str) -> YoungDiagram {
    s.parse().unwrap()
}

fn z_of(b: &BraidWord) -> HZFunction {
    hz_transform(&homfly(b).unwrap()).unwrap()
}

/// `λ ∏(1 − s_i λ q^{a_i}) / ∏(1 − λq^β)` from `(s_i, a_i)` pairs.
fn closed_form(factors: &[(i64, i64)], beta: &[i64]) -> HZFunction {
    let mut num = vec![LaurentPoly::one()];
    for &(s, a) in factors {
        let mut next = vec![LaurentPoly::zero(); num.len() + 1];
        for (k, c) in num.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= &c.shift(a).scale(&hzknot::qring::rat(s));
        }
        num = next;
    }
    HZFunction::new(num, beta.to_vec(), 0, 0).unwrap()
}

fn parity(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

const K41: [i32; 4] = [1, -2, 1, -2];
const K61: [i32; 7] = [-1, 2, -3, -1, 2, 3, 3];
const K83: [i32; 10] = [1, 1, 2, -1, -3, 2, -3, -4, 3, -4];
const K10_132: [i32; 11] = [1, 1, 1, -2, -1, -1, -2, -3, 2, -3, -3];
const L10N42: [i32; 10] = [1, -2, 1, -3, 2, 2, -3, -2, 1, 3];

fn homfly_reproduction() -> Outcome {
    let mut t = Tally::default();
    let h = |b: &BraidWord| homfly(b).unwrap().normalised_poly().unwrap();
    let trefoil = parse_laurent_a("A^-2*(q^2 + q^-2) - A^-4").unwrap();
    t.eq("3_1 via σ1³", &trefoil, &h(&word(2, &[1, 1, 1])));
    t.eq("3_1 via (σ1σ2)²", &trefoil, &h(&word(3, &[1, 2, 1, 2])));
    t.eq(
        "4_1",
        &parse_laurent_a("A^2 - q^2 - q^-2 + 1 + A^-2").unwrap(),
        &h(&word(3, &K41)),
    );
    let six_one = parse_laurent_a("A^-4 + A^2 + (1 - q^-2 - q^2)*A^-2 - q^-2*(q^2 - 1)^2").unwrap();
    t.eq("6_1", &six_one, &h(&word(4, &K61)));
    t.finish()
}

fn racah_coefficients() -> Outcome {
    let mut t = Tally::default();
    let cases: [(&str, &[i32], usize, &str, &str); 10] = [
        ("(σ1σ2)²", &[1, 2, 1, 2], 3, "[2,1]", "-1"),
        ("4_1", &K41, 3, "[2,1]", "q^4 - 2q^2 + 1 - 2q^-2 + q^-4"),
        ("6_1", &K61, 4, "[2,2]", "q - q^-1"),
        ("6_1", &K61, 4, "[3,1]", "q^-5 - q^-3 - q^-1 + q - 2q^3 + q^5"),
        ("10_132", &K10_132, 4, "[3,1]", "-q^-5 + q^-1 - q + q^5 - q^7"),
        ("8_3", &K83, 5, "[4,1]", "q^6 - q^4 - q^2 + 1 - q^-2 - q^-4 + q^-6"),
        (
            "8_3",
            &K83,
            5,
            "[3,1,1]",
            "-2q^6 + 3q^4 - q^2 + 1 - q^-2 + 3q^-4 - 2q^-6",
        ),
        ("8_3", &K83, 5, "[3,2]", "(q^-2 - 1 + q^2)*(q - q^-1)^2"),
        ("L10n42{1}", &L10N42, 4, "[3,1]", "-q^-4 + 2q^-2 - 3 + 2q^2 - q^6 + q^8"),
        ("L10n42{1}", &L10N42, 4, "[2,2]", "-q^-4 + q^-2 - 1 + q^2 - q^4"),
    ];
    for (name, letters, m, q, expected) in cases {
        let computed = racah_coeff(&word(m, letters), &diagram(q)).unwrap();
        t.eq(&format!("h^{q}({name})"), &poly(expected), &computed);
    }
    t.finish()
}

fn hz_certificates() -> Outcome {
    let mut t = Tally::default();
    let z52 = z_of(&word(3, &[1, 1, 1, 2, -1, 2]).mirror());
    t.check(
        z52.to_string() == "λ(1-q^13 λ)/((1-q λ)(1-q^5 λ)(1-q^7 λ))",
        || format!("Z(5_2) = {z52}"),
    );
    t.check(factorise(&z52).is_factorisable(), || {
        "Z(5_2) is not factorisable".into()
    });

    let z132 = z_of(&word(4, &K10_132));
    let cert = factorise(&z132);
    let alpha: Vec<i64> = cert.full_factors().iter().map(|f| f.1).collect();
    t.check(cert.is_factorisable() && alpha == [15, 1, -1], || {
        format!("Z(10_132) numerator exponents {alpha:?}")
    });

    let non_factorisable: [(&str, BraidWord, &str); 4] = [
        ("4_1", word(3, &K41), "-[-5,5]+[-3,3]+[-1,1]"),
        ("6_3", word(3, &[1, 1, -2, 1, -2, -2]), "[-7,7]-[-5,5]+[-3,3]"),
        (
            "8_17",
            word(3, &[1, 1, -2, 1, -2, 1, -2, -2]),
            "-[-9,9]+2[-7,7]-2[-5,5]+2[-3,3]",
        ),
        (
            "9_42",
            word(4, &[1, 1, 1, -2, -1, -1, 3, -2, 3]).mirror(),
            "-[-7,7]+[-3,3]+[-1,1]",
        ),
    ];
    for (name, b, stated) in non_factorisable {
        let z = z_of(&b);
        t.check(!factorise(&z).is_factorisable(), || format!("Z({name}) factorises"));
        let stated = Decomposition::parse(stated, z.beta()).unwrap();
        t.check(stated.expand() == z, || {
            format!("stated decomposition of {name} does not expand to Z")
        });
        match decompose(&z) {
            Ok(d) => t.check(d.expand() == z && d.same_terms(&stated), || {
                format!("{name}: computed {d}, stated {stated}")
            }),
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
    t.finish()
}

fn is_table_entry(name: &str) -> bool {
    [
        "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7",
    ]
    .contains(&name)
}

/// Requires every named check of the selected fixtures to pass, and at
/// least `min` of them to have been run.
fn fixture_checks(
    t: &mut Tally,
    outcomes: &[FixtureOutcome],
    select: impl Fn(&FixtureOutcome) -> bool,
    names: &[&str],
    min: usize,
) {
    let mut seen = 0;
    for o in outcomes.iter().filter(|o| select(o)) {
        if let Some(e) = &o.error {
            t.fail(format!("{}: {e}", o.name));
        }
        for c in o.checks.iter().filter(|c| names.iter().any(|n| c.name.starts_with(n))) {
            seen += 1;
            t.check(c.satisfied, || format!("{}: {} ({})", o.name, c.name, c.detail));
        }
    }
    t.check(seen >= min, || {
        format!("only {seen} of at least {min} checks of {names:?} ran")
    });
}

fn appendix_table(outcomes: &[FixtureOutcome]) -> Outcome {
    let mut t = Tally::default();
    let names = [
        "β",
        "decomposition expands to Z",
        "stated decomposition expands to Z",
        "stated and computed decompositions agree",
    ];
    // 14 knots: every β and round trip, every stated line, every match flag.
    fixture_checks(&mut t, outcomes, |o| is_table_entry(&o.name), &names, 14 * 4);
    t.finish()
}

fn property_suites(outcomes: &[FixtureOutcome]) -> Outcome {
    let mut t = Tally::default();
    // Diagonal twists.
    t.eq(
        "F_3 on [2,1]",
        &Matrix::identity(2),
        &twist_rep(3, &diagram("[2,1]"), Twist::Full).unwrap(),
    );
    let q4 = ExtScalar::from_poly(LaurentPoly::q_pow(4));
    t.eq(
        "F_4 on [3,1]",
        &Matrix::scalar(3, q4),
        &twist_rep(4, &diagram("[3,1]"), Twist::Full).unwrap(),
    );
    let mut e5 = vec![ExtScalar::from_poly(LaurentPoly::q_pow(-4)); 3];
    e5.extend(vec![ExtScalar::from_poly(LaurentPoly::q_pow(4)); 3]);
    t.eq(
        "Ẽ_5 on [3,1,1]",
        &Matrix::from_diagonal(e5),
        &twist_rep(5, &diagram("[3,1,1]"), Twist::JucysMurphy).unwrap(),
    );
    for m in 3..=5 {
        for q in YoungDiagram::partitions(m) {
            for twist in [Twist::Full, Twist::FullSub, Twist::JucysMurphy] {
                let expected: Vec<ExtScalar> = twist_eigenvalues(&q, twist)
                    .into_iter()
                    .map(ExtScalar::from_poly)
                    .collect();
                match twist_rep(m, &q, twist) {
                    Ok(rep) => t.check(rep.diagonal() == expected, || format!("{twist:?} on {q}")),
                    Err(e) => t.fail(format!("{twist:?} on {q}: {e}")),
                }
            }
        }
    }
    // Yang–Baxter and far commutativity for both bases.
    for m in 2..=5 {
        for q in YoungDiagram::partitions(m) {
            let set = build_rmatrices(m, &q).unwrap();
            t.check(satisfies_braid_relations(set.generators()), || {
                format!("orthogonal {q}")
            });
            let seminormal = [Orientation::PositiveRow, Orientation::NegativeRow]
                .into_iter()
                .any(|o| satisfies_braid_relations(&seminormal_generators(&q, o)));
            t.check(seminormal, || format!("seminormal {q}"));
        }
    }
    // h^[21] at q = 1 on random three-strand knots.
    let mut rng = StdRng::seed_from_u64(0x5eed_2121);
    let mut knots = 0;
    while knots < 200 {
        let len = rng.random_range(1..=16);
        let letters: Vec<i32> = (0..len)
            .map(|_| rng.random_range(1..=2) * if rng.random() { 1 } else { -1 })
            .collect();
        let b = word(3, &letters);
        if !b.is_knot() {
            continue;
        }
        knots += 1;
        let h = racah_coeff(&b, &diagram("[2,1]")).unwrap();
        t.check(h.eval_one() == hzknot::qring::rat(-1), || {
            format!("h^[2,1]({b}) at q = 1 is {}", h.eval_one())
        });
    }
    // Sufficient conditions against the factoriser on every fixture.
    fixture_checks(
        &mut t,
        outcomes,
        |_| true,
        &["conditions imply factorisability", "conditions"],
        10,
    );
    let exception = outcomes
        .iter()
        .find(|o| o.name == "L10n42{1}")
        .expect("L10n42{1} fixture");
    let recorded = exception.checks.iter().any(|c| c.name == "conditions" && c.satisfied)
        && exception.checks.iter().any(|c| c.name == "factorisable" && c.satisfied);
    t.check(recorded, || {
        "L10n42{1} is not recorded as factorisable with failing conditions".into()
    });
    t.finish()
}

fn family_verification() -> Outcome {
    let mut grid = Vec::new();
    for m in 3..=5 {
        for j in -2..=2 {
            for k in -2..=2 {
                for l in -2..=2 {
                    grid.push(FamilyIndex::new(m, j, k, l));
                }
            }
        }
    }
    let mut failures: Vec<String> = grid
        .par_iter()
        .filter_map(|&idx| match verify_family(idx) {
            Ok(report) => report.ensure().err().map(|e| e.to_string()),
            Err(e) => Some(format!("{idx}: {e}")),
        })
        .collect();
    for m in 3..=5usize {
        // The law is stated for n not a multiple of m: T(m, mk) is a
        // k-fold power of the central full twist.
        for n in (1..=13i64).step_by(2).filter(|n| n % m as i64 != 0) {
            let b = torus_braid(m, n).unwrap();
            let h = racah_coeff(&b, &YoungDiagram::hook(m, 1)).unwrap();
            if h != -LaurentPoly::q_pow((m as i64 - 3) * n) {
                failures.push(format!("T({m},{n}): h = {h}"));
            }
            if num_integer::gcd(m as i64, n) == 1 {
                if let Err(e) = verify_torus(m, n).and_then(|r| r.ensure()) {
                    failures.push(e.to_string());
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

fn specialisations(outcomes: &[FixtureOutcome]) -> Outcome {
    let mut t = Tally::default();
    let knots = outcomes
        .iter()
        .filter(|o| o.checks.iter().any(|c| c.name.starts_with("Jones =")))
        .count();
    fixture_checks(
        &mut t,
        outcomes,
        |_| true,
        &["Jones = H(A = q^2)", "Alexander = H(A = 1)"],
        2 * knots.max(1),
    );
    t.eq(
        "J(4_1)",
        &poly("q^4 - q^2 + 1 - q^-2 + q^-4"),
        &jones(&word(3, &K41)).unwrap(),
    );
    t.eq(
        "J(8_3)",
        &poly("q^8 - q^6 + 2q^4 - 3q^2 + 3 - 3q^-2 + 2q^-4 - q^-6 + q^-8"),
        &jones(&word(5, &K83)).unwrap(),
    );
    t.eq("Δ(4_1)", &poly("3 - q^2 - q^-2"), &alexander(&word(3, &K41)).unwrap());
    t.eq(
        "Δ(T(5,3))",
        &poly("q^8 - q^6 + q^2 - 1 + q^-2 - q^-6 + q^-8"),
        &alexander(&torus_braid(5, 3).unwrap()).unwrap(),
    );
    for (m, n) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 3)] {
        let b = torus_braid(m, n).unwrap();
        t.eq(
            &format!("Δ(T({m},{n}))"),
            &torus_alexander(m, n).unwrap(),
            &alexander(&b).unwrap(),
        );
    }
    t.finish()
}

fn oracle_equivalence(outcomes: &[FixtureOutcome]) -> Outcome {
    let mut t = Tally::default();
    fixture_checks(&mut t, outcomes, |_| true, &["series to λ^"], outcomes.len());
    fixture_checks(
        &mut t,
        outcomes,
        |_| true,
        &["inverse transform recovers"],
        outcomes.len(),
    );
    t.finish()
}

fn quivers() -> Outcome {
    let mut t = Tally::default();
    let z = |s: QuiverSeries, n: i64| quiver_poly(s, n).unwrap().hz().unwrap();
    for n in 4..=10 {
        let expected = closed_form(
            &[(1, -n - 11), (parity(n), -3 * n + 3)],
            &[-n + 1, -n - 1, -n - 3, -n - 5],
        );
        let e = z(QuiverSeries::E, n);
        t.eq(&format!("Z(E_{n})"), &expected, &e);
        t.eq(&format!("Z(pretzel {n})"), &e, &z_of(&pretzel_braid(n).unwrap()));
    }
    for n in 0..=8 {
        let expected = closed_form(&[(parity(n), -3 * n - 3)], &[-n + 1, -n - 1, -n - 3]);
        t.eq(&format!("Z(A_{n})"), &expected, &z(QuiverSeries::A, n));
    }
    // The stated D_2 denominator carries (1 − q⁻⁹λ) where the a-degrees of
    // P(D_2) force (1 − q⁻⁷λ); the numerator is compared as stated.
    let d2 = HZFunction::new(
        vec![LaurentPoly::one(), poly("q^-11 + q^-9 + q^-7 + q^-5"), poly("q^-16")],
        vec![-1, -3, -5, -7],
        0,
        0,
    )
    .unwrap();
    t.eq("Z(D_2)", &d2, &z(QuiverSeries::D, 2));
    let pd2 = quiver_poly(QuiverSeries::D, 2).unwrap();
    t.check(pd2.value.min_a_exp() == Some(-6), || "P(D_2) lowest a-degree".into());
    t.eq(
        "Z(D_3)",
        &closed_form(&[(-1, -12)], &[-2, -4, -6]),
        &z(QuiverSeries::D, 3),
    );
    let d4 = HZFunction::new(
        vec![LaurentPoly::one(), poly("2q^-13 + 2q^-11"), poly("q^-24")],
        vec![-3, -5, -7, -9],
        0,
        0,
    )
    .unwrap();
    t.eq("Z(D_4)", &d4, &z(QuiverSeries::D, 4));
    let d4_form = Decomposition::parse("3/2[-13+,-11+]-1/2[-13,-11]", d4.beta()).unwrap();
    t.eq("Z(D_4) factorised form", &d4, &d4_form.expand());
    t.eq("Z(D_5) = Z(E_5)", &z(QuiverSeries::E, 5), &z(QuiverSeries::D, 5));
    let d6 = HZFunction::new(
        vec![LaurentPoly::one(), poly("q^-19 + q^-17 + q^-15 + q^-13"), poly("q^-32")],
        vec![-5, -7, -9, -11],
        0,
        0,
    )
    .unwrap();
    t.eq("Z(D_6)", &d6, &z(QuiverSeries::D, 6));
    let d6_form = Decomposition::parse("3/4([-19+,-13+]+[-17+,-15+])-1/4([-19,-13]+[-17,-15])", d6.beta()).unwrap();
    t.eq("Z(D_6) factorised form", &d6, &d6_form.expand());
    let d6_alexander = quiver_poly(QuiverSeries::D, 6).unwrap().alexander();
    t.check(d6_alexander == Some(poly("q^6 - q^4 - q^-4 + q^-6")), || {
        format!("Δ(D_6) = {d6_alexander:?}")
    });

    let lhs = z_of(&word(3, &[1, 1, -2, 1, -2, -2])).add(&z_of(&word(4, &[1, 1, 1, -2, -1, -1, 3, -2, 3]).mirror()));
    let unknot = HZFunction::new(vec![LaurentPoly::one()], standard_beta(1, 0), 1, 0).unwrap();
    let rhs = z_of(&word(3, &K41)).add(&unknot);
    t.eq("Z(6_3) + Z(9_42) = Z(4_1) + Z(unknot)", &rhs, &lhs);
    t.finish()
}

fn main() -> ExitCode {
    let set = FixtureSet::load(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/appendix.json")).unwrap();
    let outcomes = set.run();
    let criteria: Vec<Criterion> = vec![
        ("HOMFLY-PT of 3_1 (two routes), 4_1, 6_1", Box::new(homfly_reproduction)),
        ("Racah coefficients of worked examples", Box::new(racah_coefficients)),
        ("HZ certificates and decompositions", Box::new(hz_certificates)),
        (
            "HZ types and decompositions of all knots to seven crossings",
            Box::new(|| appendix_table(&outcomes)),
        ),
        (
            "twists, braid relations, h^[2,1](1) = -1, condition reports",
            Box::new(|| property_suites(&outcomes)),
        ),
        (
            "three- to five-strand families (α = γ − 2w) and the torus law for m ∤ n",
            Box::new(family_verification),
        ),
        (
            "Jones and Alexander cross-checks",
            Box::new(|| specialisations(&outcomes)),
        ),
        (
            "series oracle and inverse transform on every fixture",
            Box::new(|| oracle_equivalence(&outcomes)),
        ),
        (
            "Dynkin quiver series (D_2 denominator (1 − q⁻⁷λ)) and the 6_3/9_42 relation",
            Box::new(quivers),
        ),
    ];
    let mut all = true;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {}: {label} [{secs:.1}s]", i + 1),
            Err(failures) => {
                all = false;
                println!("FAIL {}: {label} [{secs:.1}s]", i + 1);
                for f in failures.iter().take(12) {
                    println!("    {f}");
                }
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
