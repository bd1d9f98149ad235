//! Acceptance suite: one check per criterion, each printing a single
//! `PASS`/`FAIL` line to stderr (bypassing libtest capture) before asserting.

use std::io::Write;
use std::time::Instant;

use mosaic_core::designs::{Certificate, GddParams};
use mosaic_core::families::{DennistonGeometry, Family, FamilySpec, Slope};
use mosaic_core::field::{make_field, prime_power, FieldElement};
use mosaic_core::hashprops::{
    check_gdd_uhf_numbers, check_regular_gdd_uhf, collision_spectrum, is_optimally_universal, is_universal,
};
use mosaic_core::mosaics::{check_block_rate_optimal, check_explicitness, materialize, verify_mosaic, Optimality};
use mosaic_core::security::{
    key_uniformity_exact, max_discrepancy, pa_report, prop41_check, prop42_check, wiretap_report, BoundParams, Channel,
    JointXZ, DOMINATION_TOL, IDENTITY_TOL,
};
use mosaic_core::simkit::{pa_roundtrip, wiretap_roundtrip, Prior, SimConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "\ncriterion {n:>2} [{verdict}] {name}: {detail}");
    assert!(passed, "criterion {n} ({name}) failed: {detail}");
}

fn build(spec: FamilySpec) -> Family {
    Family::build(&spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"))
}

fn m1_sets() -> Vec<(u32, usize)> {
    vec![(2, 2), (2, 3), (3, 2), (2, 4), (2, 5)]
}

fn m2_sets() -> Vec<(u32, u32)> {
    (2..=3).flat_map(|t| (1..=t).map(move |l| (t, l))).collect()
}

fn m4_sets() -> Vec<(usize, usize)> {
    (2..=5).flat_map(|q| (2..=q + 1).map(move |k| (k, q))).collect()
}

/// Members spanning BIBD, singular GDD and semi-regular GDD cases.
fn security_members() -> Vec<FamilySpec> {
    vec![
        FamilySpec::m1(2, 2),
        FamilySpec::m1(2, 3),
        FamilySpec::m1(3, 2),
        FamilySpec::m2(2, 1),
        FamilySpec::m3(2, 1, 2),
        FamilySpec::m3(2, 2, 3),
        FamilySpec::m4(2, 3),
        FamilySpec::m4(3, 4),
    ]
}

/// Materializes, verifies the mosaic and every member against the
/// certificate, and compares against the hand formulas.
fn conformance(fam: &Family, expected: Certificate, expected_a: usize) -> Result<(), String> {
    let f = fam.form();
    let cert = fam.certificate();
    if cert != expected {
        return Err(format!("certificate {cert:?} differs from formula {expected:?}"));
    }
    let tac = cert.tactical();
    if (f.points(), f.blocks(), f.colors(), f.preimage_size()) != (tac.v, tac.b, expected_a, tac.k) {
        return Err(format!("form dimensions disagree with {tac:?}"));
    }
    if tac.v != expected_a * tac.k {
        return Err("a ≠ v/k".into());
    }
    let m = materialize(f).map_err(|e| e.to_string())?;
    verify_mosaic(&m).map_err(|v| v.to_string())?;
    for (alpha, d) in m.members().iter().enumerate() {
        cert.verify(d).map_err(|v| format!("member {alpha}: {v}"))?;
    }
    Ok(())
}

#[test]
fn criterion_01_family_parameters() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    let mut notes = Vec::new();
    for (t, q) in m1_sets() {
        let qt = q.pow(t);
        let (v, b, k, r) = (qt, q * (qt - 1) / (q - 1), q.pow(t - 1), (qt - 1) / (q - 1));
        // The displayed λ = q^(t-2) must satisfy r(k − 1) = λ(v − 1); when it
        // does not, no design has these parameters and the true hyperplane
        // count (q^(t-1) − 1)/(q − 1) is expected instead.
        let displayed = q.pow(t - 2);
        let lambda = if r * (k - 1) == displayed * (v - 1) {
            displayed
        } else {
            let true_lambda = (q.pow(t - 1) - 1) / (q - 1);
            assert_eq!(r * (k - 1), true_lambda * (v - 1));
            notes.push(format!(
                "M1({t},{q}) λ = {true_lambda}, displayed q^(t-2) = {displayed} violates r(k−1) = λ(v−1)"
            ));
            true_lambda
        };
        let expected = Certificate::Bibd(mosaic_core::designs::BibdParams { v, b, k, r, lambda });
        if let Err(e) = conformance(&build(FamilySpec::m1(t, q)), expected, q) {
            failures.push(format!("M1({t},{q}): {e}"));
        }
        count += 1;
    }
    for (t, l) in m2_sets() {
        let a = (1usize << t) + 1 - (1 << (t - l));
        let r = (1usize << t) + 1;
        let v = (1usize << l) * a;
        let expected = Certificate::Bibd(mosaic_core::designs::BibdParams { v, b: r * a, k: 1 << l, r, lambda: 1 });
        if let Err(e) = conformance(&build(FamilySpec::m2(t, l)), expected, a) {
            failures.push(format!("M2({t},{l}): {e}"));
        }
        count += 1;
        for u in 1..=3 {
            let expected = Certificate::Gdd(GddParams {
                v: u * v,
                b: r * a,
                k: u << l,
                r,
                lambda1: r,
                lambda2: 1,
                u,
                m: v,
                partition: mosaic_core::designs::Partition::consecutive(v, u),
            });
            if let Err(e) = conformance(&build(FamilySpec::m3(t, l, u)), expected, a) {
                failures.push(format!("M3({t},{l},{u}): {e}"));
            }
            count += 1;
        }
    }
    for (k, q) in m4_sets() {
        let expected = Certificate::Gdd(GddParams {
            v: k * q,
            b: q * q,
            k,
            r: q,
            lambda1: 0,
            lambda2: 1,
            u: q,
            m: k,
            partition: mosaic_core::designs::Partition::consecutive(k, q),
        });
        if let Err(e) = conformance(&build(FamilySpec::m4(k, q)), expected, q) {
            failures.push(format!("M4({k},{q}): {e}"));
        }
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    let passed = failures.is_empty() && secs < 60.0;
    let detail = format!("{count} parameter sets verified in {secs:.2} s; {notes:?}; failures: {failures:?}");
    report(1, "family parameter conformance", passed, &detail);
}

#[test]
fn criterion_02_denniston_cardinality() {
    let mut failures = Vec::new();
    let mut lines = 0usize;
    for t in 2..=3u32 {
        for l in 1..=t {
            let g = DennistonGeometry::new(t, l).unwrap();
            let arc = g.brute_force_points();
            let expected = 1 + ((1usize << t) + 1) * ((1usize << l) - 1);
            if arc.len() != expected || g.v() != expected {
                failures.push(format!("(t={t}, ℓ={l}): |X| = {}, v = {}, expected {expected}", arc.len(), g.v()));
            }
            let f = g.field();
            let slopes = std::iter::once(Slope::Infinite).chain(f.elements().map(Slope::Finite));
            for c in slopes {
                for d in f.elements() {
                    let meet = g.line(c, d).iter().filter(|p| arc.contains(p)).count();
                    lines += 1;
                    if meet != 0 && meet != 1 << l {
                        failures.push(format!("(t={t}, ℓ={l}): line {c:?}, {d:?} meets X in {meet} points"));
                    }
                }
            }
        }
    }
    let detail = format!("{lines} lines checked; failures: {failures:?}");
    report(2, "Denniston cardinality and line intersections", failures.is_empty(), &detail);
}

#[test]
fn criterion_03_exact_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst41 = 0.0f64;
    let mut worst42 = 0.0f64;
    let mut members = 0;
    let mut kinds = std::collections::BTreeSet::new();
    for spec in security_members() {
        let fam = build(spec);
        let f = fam.form();
        let cert = fam.certificate();
        let params = BoundParams::from_certificate(&cert).unwrap();
        kinds.insert(format!("{:?}", params.class));
        let m = materialize(f).unwrap();
        for d in m.members() {
            members += 1;
            for i in 0..100 {
                let zero = if i % 3 == 0 { 0.3 } else { 0.0 };
                let nz = 2 + i % 4;
                let w = Channel::random(f.points(), nz, zero, &mut rng);
                worst41 = worst41.max(prop41_check(d, &params, &w).unwrap().discrepancy);
                let pxz = JointXZ::random(f.points(), nz, zero, &mut rng);
                worst42 = worst42.max(max_discrepancy(&prop42_check(d, &params, &pxz).unwrap()));
            }
        }
    }
    let passed = worst41 < IDENTITY_TOL && worst42 < IDENTITY_TOL && members >= 6 && kinds.len() >= 3;
    let detail = format!(
        "{members} members ({kinds:?}), 100 channels and 100 sources each; max discrepancy {worst41:.2e} / {worst42:.2e}"
    );
    report(3, "exact identities", passed, &detail);
}

fn random_prior(a: usize, i: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match i % 4 {
        0 => Prior::PointMass { alpha: rng.random_range(0..a) }.resolve(a).unwrap(),
        1 => Prior::Uniform.resolve(a).unwrap(),
        _ => Channel::random(1, a, 0.25, rng).row(0).to_vec(),
    }
}

#[test]
fn criterion_04_bound_domination() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fams: Vec<Family> = security_members().into_iter().map(build).collect();
    let (mut wt, mut pa, mut point_masses) = (0, 0, 0);
    let mut violations = Vec::new();
    for i in 0..1000 {
        let fam = &fams[i % fams.len()];
        let (f, cert) = (fam.form(), fam.certificate());
        let nz = 2 + i % 5;
        let zero = if i % 2 == 0 { 0.3 } else { 0.0 };
        let w = Channel::random(f.points(), nz, zero, &mut rng);
        let p_a = random_prior(f.colors(), i, &mut rng);
        point_masses += usize::from(p_a.contains(&1.0));
        let r = wiretap_report(f, &cert, &w, &p_a, DOMINATION_TOL).unwrap();
        wt += 1;
        violations.extend(r.violations.into_iter().map(|v| format!("wiretap #{i}: {v}")));
        let pxz = JointXZ::random(f.points(), nz, zero, &mut rng);
        let r = pa_report(f, &cert, &pxz, DOMINATION_TOL).unwrap();
        pa += 1;
        violations.extend(r.violations.into_iter().map(|v| format!("pa #{i}: {v}")));
    }
    let passed = violations.is_empty() && wt >= 1000 && pa >= 1000 && point_masses > 0;
    let detail = format!(
        "{wt} wiretap instances (divergence and TV bounds, {point_masses} point-mass priors), {pa} privacy \
         amplification instances (KL and TV bounds); violations: {violations:?}"
    );
    report(4, "bound domination", passed, &detail);
}

#[test]
fn criterion_05_key_uniformity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut specs = security_members();
    specs.extend(m2_sets().into_iter().map(|(t, l)| FamilySpec::m2(t, l)));
    specs.extend([FamilySpec::m1(2, 5), FamilySpec::m4(6, 5)]);
    let mut failures = Vec::new();
    let mut tested = 0;
    for spec in specs {
        let fam = build(spec.clone());
        let f = fam.form();
        for i in 0..5 {
            let pxz = JointXZ::random(f.points(), 2 + i, if i % 2 == 0 { 0.4 } else { 0.0 }, &mut rng);
            let k = key_uniformity_exact(f, &pxz).unwrap();
            tested += 1;
            if !k.uniform {
                failures.push(format!("{spec:?}: marginal {:?} of total {}", k.marginal, k.total));
            }
        }
    }
    let detail = format!("{tested} sources across families, rational arithmetic; failures: {failures:?}");
    report(5, "key uniformity", failures.is_empty(), &detail);
}

#[test]
fn criterion_06_block_rate_optimality() {
    let rates = |fam: &Family| {
        let f = fam.form();
        check_block_rate_optimal(f.points(), f.blocks(), f.colors(), &vec![fam.certificate(); f.colors()]).unwrap()
    };
    let mut failures = Vec::new();
    for (t, l) in m2_sets().into_iter().chain([(4, 1), (4, 2), (5, 3)]) {
        if rates(&build(FamilySpec::m2(t, l))).verdict != Optimality::Optimal {
            failures.push(format!("M2({t},{l}) not optimal"));
        }
    }
    for (k, q) in m4_sets().into_iter().chain([(5, 7), (3, 8), (9, 9)]) {
        if rates(&build(FamilySpec::m4(k, q))).verdict != Optimality::Optimal {
            failures.push(format!("M4({k},{q}) not optimal"));
        }
    }
    for q in [2, 3, 4, 5, 7, 8, 9] {
        if rates(&build(FamilySpec::m1(2, q))).verdict != Optimality::Optimal {
            failures.push(format!("M1(2,{q}) not optimal"));
        }
    }
    let mut worst = 0.0f64;
    for q in [2usize, 3, 4, 5] {
        let t = 3u32;
        let r = rates(&build(FamilySpec::m1(t, q)));
        let (qf, tf) = (q as f64, t as f64);
        let b = qf * (qf.powi(3) - 1.0) / (qf - 1.0);
        let formula = b.ln() / (tf * qf.ln());
        let ceiling = 1.0 + (1.0 - (qf - 1.0).ln() / qf.ln()) / tf;
        worst = worst.max((r.block_rate - formula).abs());
        if r.verdict != Optimality::NearOptimal {
            failures.push(format!("M1(3,{q}) reported optimal"));
        }
        if (r.block_rate - formula).abs() > 1e-12 || r.block_rate > ceiling + 1e-12 {
            failures.push(format!("M1(3,{q}): block rate {} vs formula {formula}, ceiling {ceiling}", r.block_rate));
        }
    }
    let detail = format!("M1(3,q) block rate matches log b/log v to {worst:.1e}; failures: {failures:?}");
    report(6, "block-rate optimality", failures.is_empty(), &detail);
}

#[test]
fn criterion_07_hash_properties() {
    let mut failures = Vec::new();
    let bibds: Vec<FamilySpec> = m1_sets()
        .into_iter()
        .map(|(t, q)| FamilySpec::m1(t, q))
        .chain(m2_sets().into_iter().map(|(t, l)| FamilySpec::m2(t, l)))
        .collect();
    for spec in bibds {
        let fam = build(spec.clone());
        let f = fam.form();
        let Certificate::Bibd(p) = fam.certificate() else { unreachable!() };
        let s = collision_spectrum(f);
        let (v, b, a) = (f.points(), f.blocks(), f.colors());
        let a_lambda = (a * p.lambda) as u64;
        let floor_exact = (b * (v - a)) as u64 == a_lambda * (a * (v - 1)) as u64;
        if !(s.is_constant() && s.min == a_lambda && floor_exact && is_optimally_universal(&s)) {
            failures.push(format!("{spec:?}: spectrum [{}, {}], aλ = {a_lambda}", s.min, s.max));
        }
    }
    for (t, l) in m2_sets() {
        for u in 2..=3 {
            let fam = build(FamilySpec::m3(t, l, u));
            let s = collision_spectrum(fam.form());
            let Certificate::Gdd(p) = fam.certificate() else { unreachable!() };
            if is_universal(&s) || check_regular_gdd_uhf(&p).universal {
                failures.push(format!("M3({t},{l},{u}) reported universal"));
            }
        }
    }
    for (k, q) in m4_sets() {
        let fam = build(FamilySpec::m4(k, q));
        let Certificate::Gdd(p) = fam.certificate() else { unreachable!() };
        if is_universal(&collision_spectrum(fam.form())) != check_regular_gdd_uhf(&p).universal {
            failures.push(format!("M4({k},{q}): spectrum and parameter verdict disagree"));
        }
    }
    let r1 = check_gdd_uhf_numbers(4, 2, 4, 2, 1);
    let r2 = check_gdd_uhf_numbers(4, 2, 5, 3, 1);
    if !(r1.universal && r1.kr == 8 && r1.lambda1_v == 8) {
        failures.push(format!("R1 verdict {r1:?}"));
    }
    if r2.universal || r2.kr != 10 || r2.lambda1_v != 12 {
        failures.push(format!("R2 verdict {r2:?}"));
    }
    let detail =
        format!("R1 kr={}={}=λ1v, R2 kr={}<{}=λ1v; failures: {failures:?}", r1.kr, r1.lambda1_v, r2.kr, r2.lambda1_v);
    report(7, "hash properties", failures.is_empty(), &detail);
}

#[test]
fn criterion_08_explicitness() {
    const V_MAX: usize = 1 << 12;
    let mut specs = Vec::new();
    for q in (2..=64usize).filter(|&q| prime_power(q as u32).is_some()) {
        for t in 2..=12u32 {
            if q.checked_pow(t).is_some_and(|v| v <= V_MAX) {
                specs.push(FamilySpec::m1(t, q));
            }
        }
        for k in [2, q.div_ceil(2).max(2), q + 1] {
            if k * q <= V_MAX {
                specs.push(FamilySpec::m4(k, q));
            }
        }
    }
    for t in 2..=6u32 {
        for l in 1..=t {
            let v = (1usize << l) * ((1 << t) + 1 - (1 << (t - l)));
            specs.push(FamilySpec::m2(t, l));
            for u in [2, 3] {
                if u * v <= V_MAX && t <= 4 {
                    specs.push(FamilySpec::m3(t, l, u));
                }
            }
        }
    }
    specs.dedup();
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut families = std::collections::BTreeSet::new();
    for spec in &specs {
        let fam = build(spec.clone());
        assert!(fam.form().points() <= V_MAX);
        families.insert(fam.name());
        match check_explicitness(fam.form()) {
            Ok(r) => pairs += r.pairs_checked,
            Err(e) => failures.push(format!("{spec:?}: {e}")),
        }
    }
    let passed = failures.is_empty() && families.len() == 4;
    let detail = format!("{} parameter sets, {pairs} (s, α) pairs exhaustive; failures: {failures:?}", specs.len());
    report(8, "explicitness round trip", passed, &detail);
}

/// Field axioms for every element of GF(p^n).
///
/// Pairwise properties are checked over all pairs. Associativity and
/// distributivity are checked over all pairs with the third operand ranging
/// over the polynomial basis; together with additivity this covers every
/// triple. Fields of order at most 64 are additionally checked over all
/// triples directly.
fn field_axioms(p: u32, n: u32) -> Result<(), String> {
    let f = make_field(p, n).map_err(|e| e.to_string())?;
    let els: Vec<FieldElement> = f.elements().collect();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let basis: Vec<FieldElement> = (0..n).map(|i| f.basis(i)).collect();
    let fail = |what: &str, a: FieldElement, b: FieldElement| Err(format!("GF({p}^{n}): {what} at {a:?}, {b:?}"));
    for &a in &els {
        if f.add(a, zero) != a || f.mul(a, one) != a || f.add(a, f.neg(a)) != zero {
            return fail("identity or negation", a, a);
        }
        if a != zero && f.mul(a, f.inv(a).unwrap()) != one {
            return fail("inverse", a, a);
        }
        for &b in &els {
            let (ab, ba) = (f.mul(a, b), f.mul(b, a));
            if ab != ba || f.add(a, b) != f.add(b, a) {
                return fail("commutativity", a, b);
            }
            if ab != f.mul_polynomial(a, b) {
                return fail("table product vs polynomial product", a, b);
            }
            let digitwise: Vec<u32> = f.coeffs(a).iter().zip(f.coeffs(b)).map(|(x, y)| (x + y) % p).collect();
            if f.coeffs(f.add(a, b)) != digitwise {
                return fail("addition vs digitwise oracle", a, b);
            }
            if (ab == zero) != (a == zero || b == zero) {
                return fail("zero divisor", a, b);
            }
            for &c in &basis {
                if f.mul(ab, c) != f.mul(a, f.mul(b, c)) {
                    return fail("associativity", a, b);
                }
                if f.mul(a, f.add(b, c)) != f.add(ab, f.mul(a, c)) {
                    return fail("distributivity", a, b);
                }
                if f.add(f.add(a, b), c) != f.add(a, f.add(b, c)) {
                    return fail("additive associativity", a, b);
                }
            }
        }
    }
    if els.len() <= 64 {
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                        || f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                    {
                        return fail("triple check", a, b);
                    }
                }
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_09_field_oracles() {
    let mut failures = Vec::new();
    let mut elements = 0;
    for n in 1..=8 {
        let f = make_field(2, n).unwrap();
        for a in f.elements() {
            elements += 1;
            let brute: Vec<_> = f.elements().filter(|&w| f.add(f.square(w), w) == a).collect();
            if f.solve_artin_schreier(a).unwrap() != brute {
                failures.push(format!("Artin–Schreier GF(2^{n}) at {a:?}"));
            }
            let roots: Vec<_> = f.elements().filter(|&w| f.square(w) == a).collect();
            if roots != vec![f.sqrt_char2(a).unwrap()] {
                failures.push(format!("sqrt GF(2^{n}) at {a:?}"));
            }
        }
    }
    let mut fields = 0;
    for q in 2..=1024u32 {
        if let Some((p, n)) = prime_power(q) {
            fields += 1;
            if let Err(e) = field_axioms(p, n) {
                failures.push(e);
            }
        }
    }
    let detail = format!("{elements} elements against search, axioms for {fields} fields; failures: {failures:?}");
    report(9, "field oracle equivalence", failures.is_empty(), &detail);
}

#[test]
fn criterion_10_simulation_calibration() {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    let cases = [(FamilySpec::m1(2, 3), 0u64), (FamilySpec::m3(2, 1, 2), 1), (FamilySpec::m4(3, 3), 2)];
    for (spec, seed) in cases {
        let fam = build(spec.clone());
        let f = fam.form();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let w = Channel::random(f.points(), 3, 0.0, &mut rng);
        let mut cfg = SimConfig::new(100_000, seed);
        cfg.prior = Prior::Custom { p: Channel::random(1, f.colors(), 0.0, &mut rng).row(0).to_vec() };
        let r = wiretap_roundtrip(f, &w, &cfg).unwrap();
        lines.push(format!("wiretap {:?}: p = {:.3}/{:.3}", fam.name(), r.key_test.p_value, r.joint_test.p_value));
        if r.errors != 0 || !r.passed || r.key_test.p_value < 1e-3 || r.joint_test.p_value < 1e-3 {
            failures.push(format!("wiretap {spec:?}: errors {}, p {:?}/{:?}", r.errors, r.key_test, r.joint_test));
        }
        let pxz = JointXZ::random(f.points(), 3, 0.0, &mut rng);
        let r = pa_roundtrip(f, &pxz, &SimConfig::new(100_000, seed)).unwrap();
        lines.push(format!("pa {:?}: p = {:.3}/{:.3}", fam.name(), r.key_test.p_value, r.joint_test.p_value));
        if r.errors != 0 || !r.passed || r.key_test.p_value < 1e-3 || r.joint_test.p_value < 1e-3 {
            failures.push(format!("pa {spec:?}: errors {}, p {:?}/{:?}", r.errors, r.key_test, r.joint_test));
        }
    }
    let detail = format!("1e5 trials each, zero decode errors; {}; failures: {failures:?}", lines.join(", "));
    report(10, "simulation calibration", failures.is_empty(), &detail);
}
