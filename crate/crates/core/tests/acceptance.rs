//! Acceptance gate: one line per criterion, `PASS` or `FAIL`, then a
//! single assertion that everything passed.

mod common;

use std::time::{Duration, Instant};

use fermat_core::arith::Rational;
use fermat_core::fermat::{fermat_points, predicted_alpha, verify_witness, witness, FatPointScheme, Session};
use fermat_core::interp::alpha_interp;
use fermat_core::invariants::{beta, containment_check, minimal_generator_degrees, resurgence_scan};
use fermat_core::poly::Poly;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

/// The cells of the least-degree table with their expected values.
fn alpha_cells() -> Vec<(u32, u32, u32)> {
    let mut cells = Vec::new();
    for (m, a) in (1..=8).zip([3, 6, 8, 10, 13, 15, 18, 20]) {
        cells.push((2, m, a));
    }
    for (m, a) in (1..=7).zip([4, 8, 9, 13, 17, 18, 22]) {
        cells.push((3, m, a));
    }
    for (m, a) in (2..=5).zip([10, 12, 16, 21]) {
        cells.push((4, m, a));
    }
    cells.push((5, 3, 15));
    cells
}

fn criterion_1(s: &Session) -> Outcome {
    let start = Instant::now();
    for (n, m, expected) in alpha_cells() {
        let got = s.symbolic_power(n, m).and_then(|i| i.alpha()).map_err(e)?;
        ensure(got == expected, format!("alpha(I_{n}^({m})) = {got}, expected {expected}"))?;
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(30 * 60), format!("took {took:?}"))?;
    Ok(format!("{} cells in {took:.2?}", alpha_cells().len()))
}

fn criterion_2(s: &Session) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (n, m, _) in alpha_cells().into_iter().filter(|&(n, m, _)| n <= 3 && m <= 5) {
        let groebner = s.symbolic_power(n, m).and_then(|i| i.alpha()).map_err(e)?;
        let scheme = FatPointScheme::new(fermat_points(n).map_err(e)?, m).map_err(e)?;
        let interp = alpha_interp(&scheme).map_err(e)?;
        ensure(groebner == interp, format!("n={n} m={m}: groebner {groebner}, interpolation {interp}"))?;
        count += 1;
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(10 * 60), format!("took {took:?}"))?;
    Ok(format!("{count} cells agree in {took:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut cells = vec![(5, 3), (5, 7), (4, 3), (4, 5), (3, 4), (3, 7)];
    for k in 1..=3 {
        cells.push((2, 2 * k));
        cells.push((2, 2 * k + 1));
    }
    for &(n, m) in &cells {
        ensure(verify_witness(n, m).map_err(e)?, format!("witness for n={n} m={m} rejected"))?;
        let deg = witness(n, m).and_then(|w| w.degree());
        ensure(deg == predicted_alpha(n, m), format!("witness degree {deg:?} for n={n} m={m}"))?;
    }
    Ok(format!("{} witnesses verified", cells.len()))
}

fn criterion_4(s: &Session) -> Outcome {
    let mut checks: Vec<((u32, u32, u32, u32), bool)> = vec![((3, 3, 2, 0), false), ((4, 3, 2, 0), false)];
    for n in [2, 3] {
        for r in [1, 2] {
            checks.push(((n, 2 * r, r, r), true));
        }
    }
    for r in 1..=3 {
        checks.push(((2, 2 * r - 1, r, r - 1), true));
    }
    checks.push(((2, 4, 3, 3), false));
    checks.push(((2, 6, 4, 4), false));
    for &((n, m, r, a), expected) in &checks {
        let cert = containment_check(s, n, m, r, a).map_err(e)?;
        ensure(cert.holds == expected, format!("n={n} m={m} r={r} a={a}: holds={}", cert.holds))?;
        ensure(cert.holds == cert.failing_generator.is_none(), "certificate inconsistent")?;
    }
    Ok(format!("{} verdicts match", checks.len()))
}

fn criterion_5(s: &Session) -> Outcome {
    let mut ideals = Vec::new();
    for m in 1..=3 {
        let i = s.symbolic_power(3, m).map_err(e)?;
        let b = beta(&i).map_err(e)?;
        ensure(b == 4 * m, format!("beta(I_3^({m})) = {b}"))?;
        ideals.push((format!("I_3^({m})"), i));
    }
    for m in 1..=4 {
        let i = s.symbolic_power(2, m).map_err(e)?;
        let b = beta(&i).map_err(e)?;
        ensure(b == 3 * m, format!("beta(I_2^({m})) = {b}"))?;
        ideals.push((format!("I_2^({m})"), i));
    }
    let i3 = s.fermat(3).map_err(e)?.ideal.clone();
    let w = minimal_generator_degrees(&i3).map_err(e)?;
    ensure(w.last() == Some(&4), format!("omega(I_3) from {w:?}"))?;
    for r in 1..=3 {
        let p = s.ordinary_power(2, r).map_err(e)?;
        let w = minimal_generator_degrees(&p).map_err(e)?;
        ensure(w.last() == Some(&(3 * r)), format!("omega(I_2^{r}) from {w:?}"))?;
        ideals.push((format!("I_2^{r}"), p));
    }
    for (name, i) in &ideals {
        let a = i.alpha().map_err(e)?;
        let b = beta(i).map_err(e)?;
        let o = *minimal_generator_degrees(i).map_err(e)?.last().unwrap();
        ensure(a <= b && b <= o, format!("{name}: alpha {a}, beta {b}, omega {o}"))?;
    }
    Ok(format!("beta and omega values hold; alpha <= beta <= omega on {} ideals", ideals.len()))
}

fn criterion_6(s: &Session) -> Outcome {
    let p = |t: &str| Poly::parse_xyz(t).map_err(e);
    let f = p("(x^2 - y^2)^2*(y^2 - z^2)*(z^2 - x^2)*z^2")?;
    let g = p("(x^2 - y^2)^2*(y^2 - z^2)^2*(z^2 - x^2)^2*x*y*z")?;
    for (m, half, elem) in [(4, 2, &f), (6, 3, &g)] {
        let sym = s.symbolic_power(2, m).map_err(e)?;
        let square = s.symbolic_power(2, half).and_then(|i| i.power(2)).map_err(e)?;
        ensure(!sym.equals(&square).map_err(e)?, format!("I_2^({m}) equals (I_2^({half}))^2"))?;
        ensure(square.is_subset(&sym).map_err(e)?, format!("(I_2^({half}))^2 not inside I_2^({m})"))?;
        ensure(sym.contains(elem).map_err(e)?, format!("element not in I_2^({m})"))?;
        ensure(!square.contains(elem).map_err(e)?, format!("element lies in (I_2^({half}))^2"))?;
    }
    Ok("both inequalities certified by F and G".into())
}

fn criterion_7(s: &Session) -> Outcome {
    let six_fifths = Rational::new(6, 5).map_err(e)?;
    let scan2 = resurgence_scan(s, 2, 8, 6).map_err(e)?;
    for &(m, r) in &scan2.non_containments {
        ensure(Rational::new(m as i64, r as i64).map_err(e)? <= six_fifths, format!("n=2 fails at ({m},{r})"))?;
    }
    let scan3 = resurgence_scan(s, 3, 6, 4).map_err(e)?;
    ensure(scan3.non_containments.contains(&(3, 2)), "n=3 scan misses (3,2)")?;
    for scan in [&scan2, &scan3] {
        for &(m, r) in &scan.non_containments {
            ensure(m < 2 * r, format!("n={} fails at ({m},{r}) with m >= 2r", scan.n))?;
        }
    }
    Ok(format!(
        "n=2 max ratio {}, n=3 max ratio {}",
        scan2.max_ratio.map_or("none".into(), |q| q.to_string()),
        scan3.max_ratio.map_or("none".into(), |q| q.to_string())
    ))
}

fn criterion_8(s: &Session) -> Outcome {
    let start = Instant::now();
    let cases = 256;
    common::groebner_determinism(cases)?;
    common::s_polynomials_reduce(cases)?;
    common::euler_relation(cases)?;
    common::evaluation_homomorphism(cases)?;
    common::symbolic_power_nesting(s, 64)?;
    common::cyclic_symmetry(s, 64)?;
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(5 * 60), format!("took {took:?}"))?;
    Ok(format!("six suites in {took:.2?}"))
}

fn main() {
    let s = Session::new();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "least degrees by Groebner bases", criterion_1(&s)),
        (2, "interpolation agrees with Groebner", criterion_2(&s)),
        (3, "witnesses verify", criterion_3()),
        (4, "containment verdicts", criterion_4(&s)),
        (5, "beta and omega", criterion_5(&s)),
        (6, "symbolic squares differ", criterion_6(&s)),
        (7, "resurgence scans", criterion_7(&s)),
        (8, "property suites", criterion_8(&s)),
    ];
    let mut failed = 0;
    for (k, name, res) in &results {
        match res {
            Ok(detail) => println!("criterion {k} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k} FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
