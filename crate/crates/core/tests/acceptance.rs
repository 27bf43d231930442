//! Acceptance suite: twelve end-to-end checks over the reference field
//! F_3^5 = F_3[α]/(α^5 + 2α + 1) and small companions. Prints one line per
//! criterion and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gapn_core::cyclotomic::CyclotomicInt;
use gapn_core::diff::{
    b_tilde, b_tilde_by_definition, binomial_fold_test, gapn_kernel_test, is_gapn, n_tilde, spectrum,
    translation_criterion_test,
};
use gapn_core::dual_arc::{build_arc, greedy_cap_set, verify_dual_arc, MuNuConfig};
use gapn_core::equivalence::{check_invariance, random_affine_map, random_affine_permutation, random_ea_transform};
use gapn_core::function::{
    algebraic_degree, algebraic_degree_of_table, binomial, generalized_gold, inverse_permutation, monomial, p_weight,
};
use gapn_core::walsh::{gab_via_s3, gapn_fourier_sum, is_gab, walsh_coefficient, walsh_report};
use gapn_core::{AffineMap, Elem, Field, FunctionTable, PolynomialForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn reference_field() -> Field {
    Field::new(3, 5, &[1, 2, 0, 0, 0, 1]).expect("reference field")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn ints(values: &BTreeSet<CyclotomicInt>) -> Option<Vec<i64>> {
    values.iter().map(CyclotomicInt::as_integer).collect()
}

fn criterion_1() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
    pool.install(|| {
        let start = Instant::now();
        let f = reference_field();
        let t = monomial(&f, 17).tabulate();
        let n0 = n_tilde(&t, Elem::ONE, Elem::ZERO);
        let n49 = n_tilde(&t, Elem::ONE, Elem(49));
        ensure(n0 == 3 && n49 == 6, || format!("Ñ(1,0) = {n0}, Ñ(1,49) = {n49}"))?;
        // independent count straight from the definition
        let direct = f
            .elements()
            .filter(|&x| (0..3).fold(Elem::ZERO, |acc, i| f.add(acc, t.at(f.add(x, f.fp(i))))) == Elem(49))
            .count();
        ensure(direct == 6, || format!("direct count {direct}"))?;
        ensure(!is_gapn(&t), || "x^17 reported GAPN".into())?;
        let report = walsh_report(&t).map_err(|e| e.to_string())?;
        let values = ints(&report.value_set).ok_or("non-rational Walsh value")?;
        ensure(report.is_gab, || "x^17 not GAB".into())?;
        ensure(values.iter().all(|v| [0, 27, -27].contains(v)), || format!("values {values:?}"))?;
        let took = within(start, Duration::from_secs(5), "single-threaded run")?;
        Ok(format!("Ñ(1,0)=3, Ñ(1,49)=6, not GAPN, GAB with values {values:?}, {took:.2?} on 1 thread"))
    })
}

fn criterion_2() -> Outcome {
    let f = reference_field();
    let poly = monomial(&f, 11);
    let t = poly.tabulate();
    ensure(is_gapn(&t), || "x^11 not GAPN".into())?;
    let degree = algebraic_degree(&poly).map_err(|e| e.to_string())?;
    ensure(degree == 3, || format!("degree {degree}"))?;
    let report = walsh_report(&t).map_err(|e| e.to_string())?;
    let values = ints(&report.value_set).ok_or("non-rational Walsh value")?;
    let expected = vec![-54, -36, -27, -9, 0, 18, 27, 45];
    ensure(values == expected, || format!("value set {values:?}"))?;
    ensure(!report.is_gab, || "x^11 reported GAB".into())?;
    // every coefficient again by direct histogram
    let direct: BTreeSet<CyclotomicInt> = f
        .elements()
        .flat_map(|a| f.nonzero_elements().map(move |b| (a, b)))
        .map(|(a, b)| walsh_coefficient(&t, a, b))
        .collect();
    ensure(direct == report.value_set, || "direct Walsh values differ".into())?;
    Ok(format!("GAPN, degree 3, value set {values:?}, not GAB"))
}

fn criterion_3() -> Outcome {
    let f = reference_field();
    let t57 = monomial(&f, 57).tabulate();
    let inv = t57.invert_permutation().map_err(|e| e.to_string())?;
    ensure(inv == monomial(&f, 17).tabulate(), || "inverse of x^57 is not x^17".into())?;
    let (a, b) = (is_gapn(&t57), is_gapn(&inv));
    ensure(a && !b, || format!("x^57 GAPN = {a}, x^17 GAPN = {b}"))?;
    Ok("x^57 GAPN, its inverse x^17 not GAPN".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for (p, n) in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
        let f = Field::with_default_modulus(p, n).map_err(|e| e.to_string())?;
        let t = inverse_permutation(&f).tabulate();
        ensure(is_gapn(&t), || format!("inverse not GAPN over F_{p}^{n}"))?;
    }
    for (n, apn) in [(3, true), (4, false), (5, true)] {
        let f = Field::with_default_modulus(2, n).map_err(|e| e.to_string())?;
        let got = is_gapn(&inverse_permutation(&f).tabulate());
        ensure(got == apn, || format!("inverse APN over F_2^{n} = {got}"))?;
    }
    let took = within(start, Duration::from_secs(30), "inverse checks")?;
    Ok(format!("6 odd-characteristic cases GAPN, F_2^3/F_2^5 APN, F_2^4 not, {took:.2?}"))
}

fn gold_cases() -> Result<Vec<(String, FunctionTable)>, String> {
    let mut out = Vec::new();
    for (p, n, i) in [(3, 4, 1), (3, 5, 1), (3, 5, 2), (5, 3, 1), (5, 3, 2), (7, 2, 1)] {
        let f = if (p, n) == (3, 5) { reference_field() } else { Field::with_default_modulus(p, n).map_err(|e| e.to_string())? };
        let poly = generalized_gold(&f, i).map_err(|e| e.to_string())?;
        out.push((format!("gold F_{p}^{n} i={i}"), poly.tabulate()));
    }
    Ok(out)
}

fn criterion_5() -> Outcome {
    for (name, t) in gold_cases()? {
        ensure(is_gapn(&t), || format!("{name} not GAPN"))?;
        let p = t.field().p() as usize;
        let degree = algebraic_degree_of_table(&t).map_err(|e| e.to_string())?;
        ensure(degree == p, || format!("{name} degree {degree}"))?;
    }
    Ok("all six generalized Gold functions GAPN of degree p".into())
}

fn binomial_cases() -> Result<Vec<(String, Field, FunctionTable)>, String> {
    let mut out = Vec::new();
    for n in [5, 3] {
        let f = if n == 5 { reference_field() } else { Field::with_default_modulus(3, n).map_err(|e| e.to_string())? };
        let t = binomial(&f, 1).map_err(|e| e.to_string())?.tabulate();
        out.push((format!("binomial F_3^{n} i=1"), f, t));
    }
    Ok(out)
}

fn criterion_6() -> Outcome {
    for (name, f, t) in binomial_cases()? {
        ensure(is_gapn(&t), || format!("{name} not GAPN"))?;
        let fold = binomial_fold_test(&f, 1).map_err(|e| e.to_string())?;
        ensure(fold.holds, || format!("{name} fold test fails"))?;
    }
    Ok("binomials over F_3^5 and F_3^3 GAPN, fold test holds".into())
}

fn criterion_7() -> Outcome {
    let f = reference_field();
    let mut gapn: Vec<(String, FunctionTable)> = vec![
        ("x^11".into(), monomial(&f, 11).tabulate()),
        ("x^57".into(), monomial(&f, 57).tabulate()),
    ];
    for (p, n) in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
        let g = Field::with_default_modulus(p, n).map_err(|e| e.to_string())?;
        gapn.push((format!("inverse F_{p}^{n}"), inverse_permutation(&g).tabulate()));
    }
    for n in [3, 5] {
        let g = Field::with_default_modulus(2, n).map_err(|e| e.to_string())?;
        gapn.push((format!("inverse F_2^{n}"), inverse_permutation(&g).tabulate()));
    }
    gapn.extend(gold_cases()?);
    gapn.extend(binomial_cases()?.into_iter().map(|(name, _, t)| (name, t)));
    for (name, t) in &gapn {
        let sum = gapn_fourier_sum(t).map_err(|e| e.to_string())?;
        let (p, n, q) = (t.field().p() as i128, t.field().n(), t.field().size() as i128);
        let threshold = p.pow(2 * n + 1) * (q - 1);
        ensure(sum.threshold == threshold, || format!("{name}: threshold {}", sum.threshold))?;
        ensure(sum.equality && sum.value == threshold, || format!("{name}: sum {} vs {threshold}", sum.value))?;
    }
    let s17 = gapn_fourier_sum(&monomial(&f, 17).tabulate()).map_err(|e| e.to_string())?;
    ensure(s17.value > s17.threshold, || format!("x^17 sum {} not above threshold", s17.value))?;
    Ok(format!(
        "equality for {} GAPN functions, x^17 gives {} > {}",
        gapn.len(),
        s17.value,
        s17.threshold
    ))
}

/// Exponents below q with p-weight at most `w`, optionally odd only.
fn low_weight_exponents(f: &Field, w: usize, odd: bool) -> Vec<u64> {
    (1..f.size() as u64 - 1).filter(|&d| p_weight(d, f.p()) <= w && (!odd || d % 2 == 1)).collect()
}

fn random_poly(f: &Field, exps: &[u64], rng: &mut ChaCha8Rng) -> PolynomialForm {
    let k = rng.gen_range(1..=4);
    let terms: Vec<(u64, Elem)> = (0..k)
        .map(|_| (exps[rng.gen_range(0..exps.len())], Elem(rng.gen_range(1..f.size() as u32))))
        .collect();
    PolynomialForm::from_terms(f, &terms).expect("valid terms")
}

fn linear_part(m: &AffineMap) -> AffineMap {
    AffineMap::new(m.field(), m.linear_part().to_vec(), Elem::ZERO).expect("same shape")
}

/// `L1 ∘ f ∘ L2 + L0` with linear `L_i`, seeded.
fn linear_equivalent(f: &FunctionTable, seed: u64) -> FunctionTable {
    let field = f.field();
    let l1 = linear_part(&random_affine_permutation(field, seed).unwrap());
    let l2 = linear_part(&random_affine_permutation(field, seed ^ 0x55).unwrap());
    let l0 = linear_part(&random_affine_map(field, seed ^ 0xaa).unwrap());
    FunctionTable::from_fn(field, |x| field.add(l1.apply(f.at(l2.apply(x))), l0.apply(x)))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let f = reference_field();
    for (d, gab) in [(11, false), (17, true)] {
        let t = monomial(&f, d).tabulate();
        let s3 = gab_via_s3(&t).map_err(|e| e.to_string())?;
        let w = is_gab(&t);
        ensure(s3.is_gab == w && w == gab, || format!("x^{d}: S3 {} vs Walsh {w}", s3.is_gab))?;
    }
    let big = within(start, Duration::from_secs(60), "F_3^5 S^(3) checks")?;
    let small = Field::with_default_modulus(3, 3).map_err(|e| e.to_string())?;
    let exps = low_weight_exponents(&small, 3, false);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut gab_count = 0;
    for k in 0..20u64 {
        let t = if k % 2 == 0 {
            random_poly(&small, &exps, &mut rng).tabulate()
        } else {
            let base = monomial(&small, [5, 7][(k / 2 % 2) as usize]).tabulate();
            linear_equivalent(&base, k)
        };
        let s3 = gab_via_s3(&t).map_err(|e| e.to_string())?;
        let w = is_gab(&t);
        ensure(s3.is_gab == w, || format!("random function {k}: S3 {} vs Walsh {w}", s3.is_gab))?;
        gab_count += usize::from(w);
    }
    Ok(format!("x^11, x^17 and 20 functions over F_3^3 agree ({gab_count} GAB), F_3^5 part {big:.2?}"))
}

fn criterion_9() -> Outcome {
    let f = Field::with_default_modulus(3, 3).map_err(|e| e.to_string())?;
    let exps = low_weight_exponents(&f, 3, true);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut gab, mut violations) = (0, 0);
    for k in 0..50u64 {
        let t = if k % 2 == 0 {
            random_poly(&f, &exps, &mut rng).tabulate()
        } else {
            let base = monomial(&f, [5, 7, 13][(k / 2 % 3) as usize]).tabulate();
            linear_equivalent(&base, k)
        };
        ensure(t.is_odd(), || format!("function {k} is not odd"))?;
        let degree = algebraic_degree_of_table(&t).unwrap_or(0);
        ensure(degree <= 3, || format!("function {k} has degree {degree}"))?;
        if is_gab(&t) {
            gab += 1;
            if !is_gapn(&t) {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} GAB functions not GAPN"))?;
    ensure(gab > 0, || "no GAB function among the samples".into())?;
    Ok(format!("50 odd functions of degree <= 3, {gab} GAB, 0 violations"))
}

fn criterion_10() -> Outcome {
    let f = reference_field();
    for d in [11u64, 17] {
        let t = monomial(&f, d).tabulate();
        for seed in 0..10 {
            let tr = random_ea_transform(&f, 1000 * d + seed).map_err(|e| e.to_string())?;
            let r = check_invariance(&t, &tr).map_err(|e| e.to_string())?;
            ensure(r.spectrum_equal, || format!("x^{d} seed {seed}: spectra differ"))?;
            ensure(r.degree_equal == Some(true), || {
                format!("x^{d} seed {seed}: degree {} vs {}", r.degree_f, r.degree_g)
            })?;
        }
    }
    Ok("20 EA transforms of x^11 and x^17 keep spectrum multiset and degree".into())
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    let f = reference_field();
    let t = monomial(&f, 11).tabulate();
    let m = greedy_cap_set(&f, 0);
    ensure(m.len() >= 4, || format!("cap set of size {}", m.len()))?;
    for cfg in [MuNuConfig::GoldIdentity, MuNuConfig::MonomialInverse { d: 11 }] {
        let arc = build_arc(&t, cfg, &m).map_err(|e| e.to_string())?;
        let v = verify_dual_arc(&arc);
        ensure(v.ok(), || format!("{}: {v:?}", cfg.name()))?;
        // the pairwise intersection sits over F_p ν(a - b)
        for w in arc.subspaces.windows(2) {
            let nu = cfg.nu(&f, f.sub(w[0].a, w[1].a));
            let y = gapn_core::dual_arc::b_tilde_mu_nu(&t, cfg, nu, w[0].a);
            let z = gapn_core::dual_arc::b_tilde_mu_nu(&t, cfg, nu, w[1].a);
            ensure(y == z, || format!("{}: ν(a-b) not in both subspaces", cfg.name()))?;
        }
    }
    let took = within(start, Duration::from_secs(10), "dual arc verification")?;
    Ok(format!("|M| = {}, both configurations verified, {took:.2?}", m.len()))
}

fn criterion_12() -> Outcome {
    let mut fields = Vec::new();
    for (p, n) in [(3, 2), (5, 1), (5, 2), (3, 3)] {
        fields.push(Field::with_default_modulus(p, n).map_err(|e| e.to_string())?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut compared, mut low_degree) = (0usize, 0usize);
    for f in &fields {
        let mut tables: Vec<FunctionTable> =
            (1..f.size() as u64).map(|d| monomial(f, d).tabulate()).collect();
        let exps = low_weight_exponents(f, f.p() as usize, false);
        tables.extend((0..10).map(|_| random_poly(f, &exps, &mut rng).tabulate()));
        for t in &tables {
            for x in f.elements() {
                for a in f.elements() {
                    ensure(b_tilde(t, x, a) == b_tilde_by_definition(t, x, a), || {
                        format!("B̃ mismatch over {f} at x={x}, a={a}")
                    })?;
                    compared += 1;
                }
            }
            let degree = algebraic_degree_of_table(t).unwrap_or(0);
            if degree <= f.p() as usize {
                low_degree += 1;
                let g = is_gapn(t);
                let k = gapn_kernel_test(t).map_err(|e| e.to_string())?;
                let tr = translation_criterion_test(t).map_err(|e| e.to_string())?;
                ensure(g == k && g == tr, || format!("over {f}: is_gapn {g}, kernel {k}, translation {tr}"))?;
                ensure(spectrum(t).is_gapn == g, || "spectrum verdict differs".into())?;
            }
        }
    }
    Ok(format!("{compared} B̃ values agree, {low_degree} low-degree functions agree on all three GAPN tests"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("x^17 counts, not GAPN, GAB", criterion_1),
        ("x^11 GAPN, degree 3, Walsh values", criterion_2),
        ("x^57 GAPN, inverse x^17 not", criterion_3),
        ("inverse permutations", criterion_4),
        ("generalized Gold functions", criterion_5),
        ("binomials and fold test", criterion_6),
        ("Fourier-sum characterization", criterion_7),
        ("S^(3) characterization", criterion_8),
        ("GAB implies GAPN for odd cubic functions", criterion_9),
        ("EA invariance", criterion_10),
        ("dual arcs", criterion_11),
        ("oracle equivalence", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
