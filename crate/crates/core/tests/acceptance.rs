//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use matdioph_core::families::{FamilyDescriptor, PellFamily};
use matdioph_core::numtheory::{pell_fundamental, uv_solutions_upto};
use matdioph_core::oracle::{completeness_check, enumerate_solutions};
use matdioph_core::solver::{classify, Verdict};
use matdioph_core::{CommutantFrame, EquationSpec, Mat2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

fn b4(v: [i64; 4]) -> [BigInt; 4] {
    v.map(BigInt::from)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn naive_pow(x: &Mat2, n: u32) -> Mat2 {
    let mut acc = Mat2::identity();
    for _ in 0..n {
        acc = &acc * x;
    }
    acc
}

/// Compares the integral linear form of entry `idx` of X or Y.
fn check_form(fam: &PellFamily, in_x: bool, idx: usize, want: [i64; 4], label: &str) -> Result<(), String> {
    let shape = fam.shape();
    let form = if in_x { &shape.x[idx] } else { &shape.y[idx] };
    ensure(form.integral() == Some(want), || {
        format!("{label}: got {form}, want coefficients {want:?}")
    })
}

fn criterion_1() -> Outcome {
    let fam = PellFamily::new(7, 4, 1, -3, -1).map_err(|e| e.to_string())?;
    ensure(fam.g == bi(4), || format!("g = {}", fam.g))?;
    check_form(&fam, true, 1, [0, 2, 0, 0], "X12 = 2t2")?;
    check_form(&fam, true, 2, [0, 0, 2, 0], "X21 = 2t3")?;
    check_form(&fam, true, 3, [-7, 0, 0, 12], "X22 = 12t4-7t1")?;
    check_form(&fam, false, 1, [0, 1, 0, 0], "Y12 = t2")?;
    check_form(&fam, false, 3, [-4, 0, 0, 7], "Y22 = 7t4-4t1")?;
    let pair = fam.instantiate(&b4([1, 1, 1, 1])).map_err(|e| e.to_string())?;
    ensure(
        pair.x == Mat2::from_array([1, 2, 2, 5]) && pair.y == Mat2::from_array([1, 1, 1, 3]),
        || format!("instance {} {}", pair.x, pair.y),
    )?;
    let lhs = &(&pair.x * &pair.x) - &(&pair.y * &pair.y).scale(&bi(3));
    ensure(lhs == Mat2::scalar(-1), || format!("X^2 - 3Y^2 = {lhs}"))?;
    Ok(format!("X = {}, Y = {}", pair.x, pair.y))
}

fn criterion_2() -> Outcome {
    let plus = PellFamily::new(18, 8, 1, -5, 2).map_err(|e| e.to_string())?;
    check_form(&plus, true, 1, [0, 2, 0, 0], "X12 = 2t2")?;
    check_form(&plus, true, 3, [9, 0, 0, -20], "X22 = 9t1-20t4")?;
    check_form(&plus, false, 1, [0, 1, 0, 0], "Y12 = t2")?;
    check_form(&plus, false, 3, [4, 0, 0, -9], "Y22 = 4t1-9t4")?;
    let p = plus.instantiate(&b4([1, 2, -3, 1])).map_err(|e| e.to_string())?;
    let lhs = &(&p.x * &p.x) - &(&p.y * &p.y).scale(&bi(5));
    ensure(lhs == Mat2::scalar(2), || format!("+2 instance gives {lhs}"))?;

    let minus = PellFamily::new(-18, 8, 1, -5, -2).map_err(|e| e.to_string())?;
    check_form(&minus, true, 1, [0, -2, 0, 0], "X12 = -2t2")?;
    check_form(&minus, true, 3, [9, 0, 0, 20], "X22 = 20t4+9t1")?;
    check_form(&minus, false, 3, [-4, 0, 0, -9], "Y22 = -(4t1+9t4)")?;
    let q = minus.instantiate(&b4([1, 1, -2, 1])).map_err(|e| e.to_string())?;
    let lhs = &(&q.x * &q.x) - &(&q.y * &q.y).scale(&bi(5));
    ensure(lhs == Mat2::scalar(-2), || format!("-2 instance gives {lhs}"))?;
    Ok(format!("+2: X = {}, Y = {}; -2: X = {}, Y = {}", p.x, p.y, q.x, q.y))
}

/// Membership in the five shapes listed for `X² + Y² = ±pI`, `p ≡ 3 (mod 4)`.
fn five_part_shape(x: &Mat2, y: &Mat2, c: &BigInt) -> Option<&'static str> {
    let det_x = x.det();
    let det_y = y.det();
    let tr0 = |m: &Mat2| m.trace().is_zero();
    if tr0(x) && tr0(y) && !x.commutes(y) && -(&det_x) - &det_y == *c {
        return Some("i");
    }
    if let Some(t1) = x.scalar_value() {
        if tr0(y) && t1 * t1 - &det_y == *c {
            return Some("ii");
        }
    }
    if let Some(t4) = y.scalar_value() {
        if tr0(x) && -(&det_x) + t4 * t4 == *c {
            return Some("iii");
        }
    }
    let (t1, t2, t3, t4) = (&x.e11, &x.e12, &x.e21, &x.e22);
    let q = t1 * t1 + t4 * t4 + BigInt::from(2) * t2 * t3;
    if y.e11 == *t4 && y.e12 == -t2 && y.e21 == -t3 && y.e22 == *t1 && q == *c {
        return Some("iv");
    }
    let t4 = -&x.e22;
    let q = t1 * t1 + &t4 * &t4 + BigInt::from(2) * t2 * t3;
    if y.e11 == t4 && y.e12 == *t2 && y.e21 == *t3 && y.e22 == -t1 && q == *c {
        return Some("v");
    }
    None
}

fn criterion_3() -> Outcome {
    let specs = [(1, -3, -1), (1, 1, 3), (1, 1, -3), (1, 2, 5), (1, -5, 2), (1, -5, -2)];
    let mut summary = Vec::new();
    for (a, b, c) in specs {
        let spec = EquationSpec::new(a, b, c, 2, 2).map_err(|e| e.to_string())?;
        let rep = completeness_check(&spec, 3).map_err(|e| e.to_string())?;
        ensure(rep.pass(), || {
            format!(
                "({a},{b},{c}): {} unclassified, {} invalid",
                rep.unclassified.len(),
                rep.invalid.len()
            )
        })?;
        ensure(!rep.oracle.solutions.is_empty(), || format!("({a},{b},{c}): no hits"))?;
        if (a, b, c) == (1, 1, 3) {
            for (x, y) in &rep.oracle.solutions {
                ensure(five_part_shape(x, y, &bi(3)).is_some(), || {
                    format!("(1,1,3): {x}, {y} outside the five parts")
                })?;
            }
        }
        if (a, b, c) == (1, 2, 5) {
            ensure(!rep.by_tag.contains_key("ScalarPair"), || {
                "(1,2,5): ScalarPair hit".to_string()
            })?;
        }
        summary.push(format!("({a},{b},{c}):{}", rep.oracle.solutions.len()));
    }
    Ok(format!("hits {}", summary.join(" ")))
}

fn criterion_4() -> Outcome {
    let cases = [(1i64, 6u32), (2, 6), (1, 9)];
    let mut summary = Vec::new();
    for (lambda, n) in cases {
        let spec = EquationSpec::fermat(lambda, n).map_err(|e| e.to_string())?;
        let report = classify(&spec);
        ensure(report.verdict == Verdict::NoneByTheorem, || {
            format!("λ={lambda}, n={n}: verdict {:?}", report.verdict)
        })?;
        let res = enumerate_solutions(&spec, 2);
        let nontrivial = res.counts.nontrivial();
        ensure(nontrivial == 0, || format!("λ={lambda}, n={n}: {nontrivial} nontrivial hits"))?;
        summary.push(format!("λ={lambda},n={n}: {} trivial", res.solutions.len()));
    }
    Ok(summary.join("; "))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    for i in 0..1000 {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let n = rng.gen_range(1..=15u32);
        let x = Mat2::from_array(e);
        ensure(x.pow_closed(n) == naive_pow(&x, n), || format!("case {i}: {x}^{n}"))?;
    }
    Ok("1000 random cases".to_string())
}

/// `X^k` value predicted from the entries for each order.
fn lemma_value(x: &Mat2, k: u32) -> BigInt {
    let (a, b, c, d) = (&x.e11, &x.e12, &x.e21, &x.e22);
    let tr = a + d;
    let det = a * d - b * c;
    match k {
        1 => a.clone(),
        2 => a * a + b * c,
        3 => -(&tr * &tr * &tr),
        4 => -(&det * &det),
        6 => -(&det * &det * &det),
        _ => unreachable!(),
    }
}

fn criterion_6() -> Outcome {
    let mut by_order = [0usize; 13];
    for x in matdioph_core::mat2::all_bounded(3) {
        let mut naive = None;
        let mut p = Mat2::identity();
        for k in 1..=12u32 {
            p = &p * &x;
            if p.is_scalar() {
                naive = Some((k, p.e11.clone()));
                break;
            }
        }
        let got = x.scalar_order().map(|c| (c.order, c.value));
        ensure(got == naive, || format!("{x}: classifier {got:?}, naive {naive:?}"))?;
        if let Some((k, value)) = naive {
            ensure(lemma_value(&x, k) == value, || format!("{x}: value formula for k={k}"))?;
            by_order[k as usize] += 1;
        }
    }
    Ok(format!(
        "k=1:{} k=2:{} k=3:{} k=4:{} k=6:{}",
        by_order[1], by_order[2], by_order[3], by_order[4], by_order[6]
    ))
}

fn criterion_7() -> Outcome {
    let all = matdioph_core::mat2::all_bounded(2);
    let mut commuting = 0usize;
    for x in &all {
        for y in &all {
            let direct = x * y == y * x;
            ensure(x.commutes(y) == direct, || format!("{x}, {y}"))?;
            commuting += usize::from(direct);
        }
    }
    Ok(format!("{} pairs, {commuting} commuting", all.len() * all.len()))
}

fn criterion_8() -> Outcome {
    let spec = EquationSpec::fermat(1, 4).map_err(|e| e.to_string())?;
    let res = enumerate_solutions(&spec, 2);
    let fam = FamilyDescriptor::NonCommQuartic { c: BigInt::one() };
    let mut count = 0;
    for (x, y) in res.solutions.iter().filter(|(x, y)| !x.commutes(y)) {
        ensure(x.trace().is_zero() && y.trace().is_zero(), || format!("{x}, {y} not traceless"))?;
        let (p, q) = (-x.det(), -y.det());
        ensure(&p * &p + &q * &q == BigInt::one(), || format!("{x}, {y} violates the constraint"))?;
        fam.validate_member(x, y).map_err(|e| format!("{x}, {y}: {e}"))?;
        count += 1;
    }
    ensure(count > 0, || "no non-commuting hits".to_string())?;
    Ok(format!("{count} non-commuting hits"))
}

fn brute_uv(ab: i64, c: i64, u_max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let c2 = c * c;
    if ab > 0 {
        for u in -c.abs()..=c.abs() {
            for v in -c.abs()..=c.abs() {
                if u * u + ab * v * v == c2 {
                    out.push((u, v));
                }
            }
        }
    } else {
        for u in -u_max..=u_max {
            let num = u * u - c2;
            if num % (-ab) != 0 {
                continue;
            }
            let v2 = num / (-ab);
            if v2 < 0 {
                continue;
            }
            let v = (v2 as f64).sqrt().round() as i64;
            for v in [v - 1, v, v + 1] {
                if v >= 0 && v * v == v2 {
                    out.push((u, v));
                    if v != 0 {
                        out.push((u, -v));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn as_small(pairs: Vec<(BigInt, BigInt)>) -> Vec<(i64, i64)> {
    let mut v: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u.to_i64().unwrap(), v.to_i64().unwrap()))
        .collect();
    v.sort();
    v
}

fn criterion_9() -> Outcome {
    for d in 2..=50i64 {
        if (d as f64).sqrt().fract() == 0.0 {
            continue;
        }
        let sol = pell_fundamental(&bi(d)).map_err(|e| e.to_string())?;
        let mut brute = None;
        for v in 1..100_000i64 {
            let u2 = 1 + d * v * v;
            let u = (u2 as f64).sqrt().round() as i64;
            if u * u == u2 {
                brute = Some((u, v));
                break;
            }
        }
        let Some((u, v)) = brute else {
            return Err(format!("D={d}: brute force found nothing"));
        };
        ensure(sol.u == bi(u) && sol.v == bi(v), || format!("D={d}: ({}, {}) vs ({u}, {v})", sol.u, sol.v))?;
    }

    let mut triples = 0;
    for a in -20..=20i64 {
        for b in -20..=20i64 {
            if a * b <= 0 {
                continue;
            }
            for c in -20..=20i64 {
                if c == 0 || bi(a).gcd(&bi(b)).gcd(&bi(c)) != BigInt::one() {
                    continue;
                }
                let got = as_small(
                    uv_solutions_upto(&bi(a), &bi(b), &bi(c), &bi(c.abs())).map_err(|e| e.to_string())?,
                );
                ensure(got == brute_uv(a * b, c, 0), || format!("({a},{b},{c})"))?;
                triples += 1;
            }
        }
    }
    let u_max = 10_000i64;
    for (a, b, c) in [(1, -3, -1), (1, -5, 2), (1, -5, -2), (1, -2, 7), (2, -3, 5), (1, -7, 3)] {
        let got = as_small(uv_solutions_upto(&bi(a), &bi(b), &bi(c), &bi(u_max)).map_err(|e| e.to_string())?);
        let want = brute_uv(a * b, c, u_max);
        ensure(got == want, || format!("({a},{b},{c}): {} vs {} pairs", got.len(), want.len()))?;
    }
    Ok(format!("D ≤ 50 minimal; {triples} definite triples; indefinite to |u| ≤ 10^4"))
}

fn criterion_10() -> Outcome {
    let mut frames = 0;
    let mut checks = 0usize;
    for e in -3..=3i64 {
        for f in -3..=3i64 {
            for g in -3..=3i64 {
                let Ok(frame) = CommutantFrame::new(e, f, g) else {
                    continue;
                };
                if frame.sqfree.is_none() {
                    continue;
                }
                frames += 1;
                let a = frame.matrix();
                let mut elems = Vec::new();
                for alpha in -12..=12i64 {
                    for beta in -6..=6i64 {
                        let b = &Mat2::scalar(alpha) + &a.scale(&bi(beta));
                        if b.abs_max() <= bi(6) {
                            elems.push(b);
                        }
                    }
                }
                for b1 in &elems {
                    let x1 = frame.embed(b1).map_err(|err| format!("{b1}: {err}"))?;
                    ensure(frame.lift(&x1).ok().as_ref() == Some(b1), || format!("round trip {b1}"))?;
                    for b2 in &elems {
                        let x2 = frame.embed(b2).map_err(|err| err.to_string())?;
                        let prod = frame.embed(&(b1 * b2)).map_err(|err| err.to_string())?;
                        let sum = frame.embed(&(b1 + b2)).map_err(|err| err.to_string())?;
                        ensure(x1.mul(&x2).ok() == Some(prod), || format!("product {b1} {b2}"))?;
                        ensure(x1.add(&x2).ok() == Some(sum), || format!("sum {b1} {b2}"))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{frames} frames, {checks} element pairs"))
}

/// Name, check and time budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 example family b=-3", criterion_1, Duration::from_secs(1)),
        ("2 example families b=-5", criterion_2, Duration::from_secs(1)),
        ("3 completeness vs oracle, bound 3", criterion_3, Duration::from_secs(600)),
        ("4 nonexistence for n = 6, 9", criterion_4, Duration::from_secs(120)),
        ("5 closed power vs naive", criterion_5, Duration::from_secs(10)),
        ("6 scalar-order classifier", criterion_6, Duration::from_secs(30)),
        ("7 commutativity criterion", criterion_7, Duration::from_secs(60)),
        ("8 quartic non-commuting family", criterion_8, Duration::from_secs(120)),
        ("9 Pell layer", criterion_9, Duration::from_secs(60)),
        ("10 embed/lift round trip", criterion_10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let within = elapsed <= budget;
        match (&outcome, within) {
            (Ok(detail), true) => {
                println!("PASS criterion {name} [{:.2?}] {detail}", elapsed)
            }
            (Ok(detail), false) => {
                failed += 1;
                println!("FAIL criterion {name} [{:.2?} > {:?}] {detail}", elapsed, budget)
            }
            (Err(why), _) => {
                failed += 1;
                println!("FAIL criterion {name} [{:.2?}] {why}", elapsed)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
