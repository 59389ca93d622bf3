//! Acceptance criteria, run in order with one PASS/FAIL line each.
//!
//! Every comparison is exact. The process exits non-zero if any criterion
//! fails, so `cargo test` reports the target as failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rota_baxter::identities::{
    check_bch_chl_factorization, check_generalized_spitzer, check_kingman, check_lemma_iteration,
    check_rb_axiom, check_special_equality, check_spitzer, EulerianVariant, LemmaItem,
};
use rota_baxter::solvers::{bernoulli_numbers, inhom_closed_commutative, picard_solve};
use rota_baxter::{
    run_suite, EquationSpec, OperatorSpec, Rational, RingDescriptor, RingElement, SuiteManifest,
    TruncatedSeries,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const BOUND: u32 = 10;
const QS: [&str; 4] = ["1/2", "2/3", "-1/2", "3"];
const EULER_QS: [&str; 5] = ["1/2", "2/3", "-1/2", "3", "5/7"];

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn series(text: &str, cap: usize) -> TruncatedSeries {
    TruncatedSeries::parse(text, RingDescriptor::SCALAR, cap).unwrap()
}

fn q_ops(q: &str) -> [OperatorSpec; 2] {
    [
        OperatorSpec::q_integral(r(q)).unwrap(),
        OperatorSpec::q_scale(r(q)).unwrap(),
    ]
}

fn all_ops() -> Vec<OperatorSpec> {
    let mut ops: Vec<OperatorSpec> = QS.iter().flat_map(|q| q_ops(q)).collect();
    ops.push(OperatorSpec::antiderivative());
    ops
}

fn three_ops() -> [OperatorSpec; 3] {
    let [qint, qscale] = q_ops("1/2");
    [qint, qscale, OperatorSpec::antiderivative()]
}

fn random(ring: RingDescriptor, cap: usize, rng: &mut ChaCha8Rng) -> TruncatedSeries {
    TruncatedSeries::random(ring, cap, 1, BOUND, rng)
}

/// Turns a verdict into an outcome, naming the case on failure.
fn expect_pass(
    case: impl FnOnce() -> String,
    verdict: rota_baxter::identities::Verdict,
) -> Outcome {
    match verdict {
        Ok(None) => Ok(()),
        Ok(Some(m)) => Err(format!(
            "{}: mismatch at t^{}: {} vs {}",
            case(),
            m.power,
            m.lhs,
            m.rhs
        )),
        Err(e) => Err(format!("{}: {e}", case())),
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (i, op) in all_ops().iter().enumerate() {
        for ring in [RingDescriptor::SCALAR, RingDescriptor::matrix(2).unwrap()] {
            expect_pass(
                || format!("{op} over {ring}"),
                check_rb_axiom(op, ring, 100, 16, i as u64, BOUND),
            )?;
        }
    }
    within(Duration::from_secs(10), start)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for op in all_ops() {
        let mut inputs = vec![series("0,1", 20)];
        inputs.extend((0..20).map(|_| random(RingDescriptor::SCALAR, 20, &mut rng)));
        for a in &inputs {
            expect_pass(|| format!("{op}, a = {a}"), check_spitzer(&op, a))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for op in all_ops() {
        for _ in 0..20 {
            let a0 = random(RingDescriptor::SCALAR, 16, &mut rng);
            let a1 = random(RingDescriptor::SCALAR, 16, &mut rng);
            let eq = EquationSpec::left(op.clone(), a0, a1).map_err(|e| e.to_string())?;
            let closed = inhom_closed_commutative(&eq).map_err(|e| e.to_string())?;
            let picard = picard_solve(&eq).map_err(|e| e.to_string())?;
            if closed != picard {
                let (k, c, p) = closed.first_difference(&picard).unwrap();
                return Err(format!("{op}: mismatch at t^{k}: {c} vs {p}"));
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for dim in [2, 3] {
        let ring = RingDescriptor::matrix(dim).unwrap();
        for op in three_ops() {
            for _ in 0..10 {
                let a0 = random(ring, 10, &mut rng);
                let a1 = random(ring, 10, &mut rng);
                let mut eqs = vec![EquationSpec::left(op.clone(), a0.clone(), a1.clone())];
                if !op.weight().is_zero() {
                    eqs.push(EquationSpec::right(op.clone(), a0, a1));
                }
                for eq in eqs {
                    let eq = eq.map_err(|e| e.to_string())?;
                    expect_pass(
                        || format!("{op}, dim {dim}, {}", eq.form()),
                        check_generalized_spitzer(&eq),
                    )?;
                }
            }
        }
    }
    within(Duration::from_secs(60), start)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ring = RingDescriptor::matrix(2).unwrap();
    for op in q_ops("1/2") {
        for _ in 0..10 {
            let a = random(ring, 10, &mut rng);
            expect_pass(
                || format!("{op}, a = {a}"),
                check_bch_chl_factorization(&op, &a),
            )?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for op in q_ops("1/2") {
        let inputs: Vec<_> = (0..10)
            .map(|_| random(RingDescriptor::SCALAR, 12, &mut rng))
            .collect();
        for n in 1..=6 {
            for u in &inputs {
                expect_pass(
                    || format!("{op}, n = {n}, u = {u}"),
                    check_kingman(&op, u, n),
                )?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let op = OperatorSpec::antiderivative();
    let inputs: Vec<_> = (0..10)
        .map(|_| TruncatedSeries::random(RingDescriptor::SCALAR, 12, 0, BOUND, &mut rng))
        .collect();
    for a in &inputs {
        for k in 0..=8 {
            expect_pass(
                || format!("A, k = {k}, a = {a}"),
                check_lemma_iteration(LemmaItem::A, &op, a, k),
            )?;
        }
        for k in 0..=6 {
            expect_pass(
                || format!("B, k = {k}, a = {a}"),
                check_lemma_iteration(LemmaItem::B, &op, a, k),
            )?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    use EulerianVariant::*;
    for qt in EULER_QS {
        let q = r(qt);
        for v in [
            PropTwo,
            InteriorLemma,
            QBinomialCorrected,
            PropOneCorrected,
            ComputationOne,
            EulerianThird,
            EulerianFirstPartial,
        ] {
            expect_pass(|| format!("{v}, q = {qt}"), v.check(&q, 30))?;
        }
        let one = Rational::one();
        let printed = [
            (
                PropOnePrinted,
                &q / &(&one - &q),
                (&q + &q - &one) / (&one - &q),
            ),
            (QBinomialPrinted, &one / &(&one - &q), &q / &(&one - &q)),
        ];
        for (v, lhs, rhs) in printed {
            let m = v
                .check(&q, 30)
                .map_err(|e| format!("{v}, q = {qt}: {e}"))?
                .ok_or_else(|| format!("{v}, q = {qt}: unexpectedly holds"))?;
            let want = (1, RingElement::Scalar(lhs), RingElement::Scalar(rhs));
            if (m.power, m.lhs.clone(), m.rhs.clone()) != want {
                return Err(format!(
                    "{v}, q = {qt}: got t^{} {} vs {}",
                    m.power, m.lhs, m.rhs
                ));
            }
        }
    }
    let start = Instant::now();
    let outcome = run_suite(&SuiteManifest::default_manifest()).map_err(|e| e.to_string())?;
    if let Some((report, expected)) = outcome.unexpected().next() {
        return Err(format!("default suite: {report} (expected {expected})"));
    }
    within(Duration::from_secs(180), start)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for op in q_ops("1/2") {
        let mut inputs = vec![series("0,1", 12)];
        inputs.extend((0..10).map(|_| random(RingDescriptor::SCALAR, 12, &mut rng)));
        for a1 in &inputs {
            expect_pass(
                || format!("{op}, a1 = {a1}"),
                check_special_equality(&op, a1),
            )?;
        }
    }
    Ok(())
}

/// Checks `Σ_{j=0..k} C(k+1, j) B_j = 0` for `k = 1..=20` with binomials
/// from Pascal's triangle.
fn criterion_10() -> Outcome {
    let b = bernoulli_numbers(20);
    let mut row = vec![BigInt::from(1)];
    for n in 1..=21usize {
        let mut next = vec![BigInt::from(1); n + 1];
        for j in 1..n {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
        if n >= 2 {
            let k = n - 1;
            let sum = (0..=k).fold(Rational::zero(), |acc, j| {
                acc + Rational::from_bigints(row[j].clone(), BigInt::from(1)).unwrap() * &b[j]
            });
            if !sum.is_zero() {
                return Err(format!("recurrence fails at k = {k}: {sum}"));
            }
        }
    }
    if b[0] != Rational::one() || b[1] != r("-1/2") || b[2] != r("1/6") {
        return Err(format!("B0..B2 = {}, {}, {}", b[0], b[1], b[2]));
    }
    if let Some(k) = (3..=20).step_by(2).find(|&k| !b[k].is_zero()) {
        return Err(format!("B{k} = {}", b[k]));
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let [qint, _] = q_ops("1/2");
    let t2 = series("0,1", 2);
    let eq = EquationSpec::left(qint, t2.clone(), t2).map_err(|e| e.to_string())?;
    let got = picard_solve(&eq).map_err(|e| e.to_string())?;
    if got != series("0,1,2/3", 2) {
        return Err(format!("qint: {got}"));
    }
    let t4 = series("0,1", 4);
    let eq = EquationSpec::left(OperatorSpec::antiderivative(), t4.clone(), t4)
        .map_err(|e| e.to_string())?;
    let got = picard_solve(&eq).map_err(|e| e.to_string())?;
    if got != series("0,0,1/2,0,1/8", 4) {
        return Err(format!("antider: {got}"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Rota-Baxter axiom for P and its tilde", criterion_1),
        ("Spitzer closed form equals the Picard sum", criterion_2),
        ("commutative inhomogeneous closed form", criterion_3),
        ("non-commutative closed forms, left and right", criterion_4),
        ("BCH factorization through chi", criterion_5),
        ("Kingman's formula", criterion_6),
        ("iteration lemma, items A and B", criterion_7),
        ("Eulerian identities and the default suite", criterion_8),
        ("special equality and its equation", criterion_9),
        ("Bernoulli numbers", criterion_10),
        ("solver spot values", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
