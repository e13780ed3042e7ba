//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};
use uqrs::cli::{positive_degrees, run, Command, JobSpec, Suite};
use uqrs::euler_form::{EulerData, Which};
use uqrs::exact_arith::{rint, FieldElem};
use uqrs::hc_center::{
    check_w_invariant, expand_in_orbit_sums, express_orbit_sum_in_hc, grothendieck_product, hc_image, orbit_sum,
    poly_express, poly_substitute,
};
use uqrs::module_builder::{
    build_z, check_s2_twist, default_probes, depth, relation_audit, simple_quotient, verify_central,
    verify_trace_identity,
};
use uqrs::pairing_engine::{
    dual_bases, gram_matrix, serre_in_radical, serre_in_radical_minus, PairingEngine, RossoMonomial,
};
use uqrs::root_data::{LieType, RootSystem, Weight};
use uqrs::u0_characters::{rho_eval, FlatElement, LatticeForm};
use uqrs::weight_mults::{dominant_box, dominant_weights_below, freudenthal, kostant_mult, partition_count, weyl_dim};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn listed_types() -> Vec<(LieType, usize)> {
    let mut v = Vec::new();
    v.extend((1..=8).map(|n| (LieType::A, n)));
    v.extend((2..=8).map(|n| (LieType::B, n)));
    v.extend((2..=8).map(|n| (LieType::C, n)));
    v.extend((4..=8).map(|n| (LieType::D, n)));
    v.extend((6..=8).map(|n| (LieType::E, n)));
    v.push((LieType::F, 4));
    v.push((LieType::G, 2));
    v
}

fn expected_det(t: LieType, n: usize) -> i64 {
    let even = n.is_multiple_of(2);
    match t {
        LieType::A => i64::from(even),
        LieType::B => if even { 1 << n } else { 0 },
        LieType::C | LieType::D => if even { 4 } else { 0 },
        LieType::E => if n == 7 { 0 } else { 1 },
        LieType::F => 4,
        LieType::G => 9,
    }
}

fn ed(t: LieType, n: usize) -> EulerData {
    EulerData::for_type(t, n).expect("listed type")
}

fn c1_determinants() -> Outcome {
    let types = listed_types();
    for &(t, n) in &types {
        let (d, k) = ed(t, n).det_and_kernel(Which::RPlusS);
        let want = expected_det(t, n);
        ensure(d == BigInt::from(want), || format!("{t}{n}: det(R+S) = {d}, expected {want}"))?;
        ensure(k.is_empty() == (want != 0), || format!("{t}{n}: kernel dimension {} disagrees with det", k.len()))?;
    }
    Ok(format!("{} types", types.len()))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    a.iter().map(|row| (0..b[0].len()).map(|c| (0..n).map(|k| row[k] * b[k][c]).sum()).collect()).collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|c| a.iter().map(|r| r[c]).collect()).collect()
}

fn c2_symmetrized() -> Outcome {
    let mut reflections = 0;
    for (t, n) in listed_types() {
        let e = ed(t, n);
        let rs = &e.rs;
        let b = e.matrix(Which::RMinusS);
        for i in 0..n {
            for j in 0..n {
                ensure(b[i][j] == rs.symmetrizers[i] * rs.cartan[i][j], || format!("{t}{n}: (R-S)[{i}][{j}] != (DC)[{i}][{j}]"))?;
            }
        }
        let (d, _) = e.det_and_kernel(Which::RMinusS);
        let want = rs.symmetrizers.iter().product::<i64>() * rs.cartan_det();
        ensure(d == BigInt::from(want) && want > 0, || format!("{t}{n}: det(R-S) = {d}"))?;
        for i in 0..n {
            // Sigma_i in the alpha basis: columns are the images of the simple roots.
            let cols: Vec<Vec<i64>> = (0..n).map(|j| rs.reflect(i, &rs.simple_root(j)).alpha_ints().unwrap()).collect();
            let sigma = transpose(&cols);
            ensure(mat_mul(&b, &sigma) == mat_mul(&transpose(&sigma), &b), || format!("{t}{n}: reflection s{}", i + 1))?;
            reflections += 1;
        }
    }
    Ok(format!("{reflections} reflections"))
}

fn c3_kernel() -> Outcome {
    let e = ed(LieType::A, 3);
    let (d, k) = e.det_and_kernel(Which::RPlusS);
    ensure(d.is_zero(), || format!("det(R+S) = {d}"))?;
    ensure(k == vec![vec![rint(1), rint(0), rint(1)]], || format!("kernel {k:?}"))?;
    let rs = &e.rs;
    let eta = rs.from_alpha_ints(&[1, 0, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-6..=6)).collect();
        let lam = rs.from_omega_ints(&c);
        let v = rho_eval(&e, &lam, &eta, &eta);
        ensure(v.is_one(), || format!("rho^{lam}(w'_eta w_eta) = {v:?}"))?;
    }
    // Even-rank control: A2 has a trivial kernel, so no such eta exists there.
    let (_, k2) = ed(LieType::A, 2).det_and_kernel(Which::RPlusS);
    ensure(k2.is_empty(), || "A2 kernel is nontrivial".into())?;
    Ok("kernel (1,0,1); 20 random weights see w'_eta w_eta as 1".into())
}

fn small_types() -> Vec<RootSystem> {
    [(LieType::A, 1), (LieType::A, 2), (LieType::B, 2), (LieType::G, 2)]
        .into_iter()
        .map(|(t, n)| RootSystem::new(t, n).unwrap())
        .collect()
}

fn c4_multiplicities() -> Outcome {
    let mut pairs = 0;
    for rs in small_types() {
        for lam in dominant_box(&rs, 6) {
            let t = freudenthal(&rs, &lam).map_err(e2s)?;
            let mut mus = dominant_weights_below(&rs, &lam);
            mus.extend(t.all_weights(&rs).into_iter().map(|(w, _)| w).filter(|w| !w.is_dominant()));
            for mu in mus {
                let k = kostant_mult(&rs, &lam, &mu).map_err(e2s)?;
                let f = t.mult(&rs, &mu);
                ensure(f == k, || format!("{}: L({lam}) at {mu}: freudenthal {f}, kostant {k}", rs.label()))?;
                pairs += 1;
            }
            let (d, w) = (t.dimension(&rs), weyl_dim(&rs, &lam).map_err(e2s)?);
            ensure(d == w, || format!("{}: dim L({lam}) = {d}, Weyl {w}", rs.label()))?;
        }
    }
    Ok(format!("{pairs} (lambda, mu) pairs"))
}

fn flat_of(dec: &BTreeMap<Weight, u64>) -> Vec<(Vec<i64>, u64)> {
    dec.iter().map(|(w, c)| (w.omega_ints().unwrap(), *c)).collect()
}

fn c5_harish_chandra() -> Outcome {
    let mut images = 0;
    for rs in small_types() {
        let bx = dominant_box(&rs, 6);
        for lam in &bx {
            let img = hc_image(&rs, lam, LatticeForm::Weight).map_err(e2s)?;
            check_w_invariant(&rs, &img.flat).map_err(e2s)?;
            let expanded = expand_in_orbit_sums(&rs, &img.flat).map_err(e2s)?;
            let back = expanded.iter().fold(FlatElement::zero(), |a, (w, c)| a.add(&orbit_sum(&rs, w).scale(c)));
            ensure(back == img.flat, || format!("{}: expansion of {lam} does not round-trip", rs.label()))?;
            let mut rebuilt = FlatElement::zero();
            for (mu, c) in express_orbit_sum_in_hc(&rs, lam).map_err(e2s)? {
                rebuilt = rebuilt.add(&hc_image(&rs, &mu, LatticeForm::Weight).map_err(e2s)?.flat.scale(&c));
            }
            ensure(rebuilt == orbit_sum(&rs, lam), || format!("{}: expression of m({lam}) does not round-trip", rs.label()))?;
            let p = poly_express(&rs, lam).map_err(e2s)?;
            ensure(poly_substitute(&rs, &p).map_err(e2s)? == img.flat, || format!("{}: polynomial {p} for {lam}", rs.label()))?;
            images += 1;
        }
        let small = dominant_box(&rs, 2);
        for a in &small {
            for b in &small {
                let ab = grothendieck_product(&rs, a, b).map_err(e2s)?;
                let ba = grothendieck_product(&rs, b, a).map_err(e2s)?;
                ensure(ab == ba, || format!("{}: [{a}][{b}] not commutative", rs.label()))?;
            }
        }
    }
    let a2 = RootSystem::new(LieType::A, 2).unwrap();
    let got = grothendieck_product(&a2, &a2.fundamental(0), &a2.fundamental(1)).map_err(e2s)?;
    ensure(flat_of(&got) == vec![(vec![0, 0], 1), (vec![1, 1], 1)], || format!("A2 [w1][w2] = {got:?}"))?;
    let a1 = RootSystem::new(LieType::A, 1).unwrap();
    let got = grothendieck_product(&a1, &a1.fundamental(0), &a1.fundamental(0)).map_err(e2s)?;
    ensure(flat_of(&got) == vec![(vec![0], 1), (vec![2], 1)], || format!("A1 [w1]^2 = {got:?}"))?;
    // Associativity on a triple, via the products' characters.
    let b2 = RootSystem::new(LieType::B, 2).unwrap();
    let (x, y, z) = (b2.fundamental(0), b2.fundamental(1), b2.from_omega_ints(&[1, 1]));
    let char_of = |dec: &BTreeMap<Weight, u64>| -> Result<FlatElement, String> {
        let mut acc = FlatElement::zero();
        for (w, c) in dec {
            acc = acc.add(&hc_image(&b2, w, LatticeForm::Weight).map_err(e2s)?.flat.scale(&FieldElem::from_int(*c as i64)));
        }
        Ok(acc)
    };
    let hz = hc_image(&b2, &z, LatticeForm::Weight).map_err(e2s)?.flat;
    let hx = hc_image(&b2, &x, LatticeForm::Weight).map_err(e2s)?.flat;
    let left = char_of(&grothendieck_product(&b2, &x, &y).map_err(e2s)?)?.mul(&hz);
    let right = hx.mul(&char_of(&grothendieck_product(&b2, &y, &z).map_err(e2s)?)?);
    ensure(left == right, || "B2 product not associative".into())?;
    Ok(format!("{images} images"))
}

fn c6_pairing() -> Outcome {
    let mut degrees = 0;
    for (t, h) in [(LieType::A, 4), (LieType::B, 4), (LieType::G, 5)] {
        let eng = PairingEngine::new(ed(t, 2));
        let rs = &eng.ed.rs;
        for beta in positive_degrees(2, h) {
            let gd = gram_matrix(&eng, &beta, h).map_err(e2s)?;
            let want = partition_count(rs, &beta);
            ensure(gd.pivot_rows.len() as u64 == want, || format!("{t}2 {beta:?}: rank {} vs {want}", gd.pivot_rows.len()))?;
            let (us, vs) = dual_bases(&gd);
            for (j, v) in vs.iter().enumerate() {
                for (i, u) in us.iter().enumerate() {
                    let x = eng.pair_combs(v, u);
                    let want = if i == j { FieldElem::one() } else { FieldElem::zero() };
                    ensure(x == want, || format!("{t}2 {beta:?}: <v{j}, u{i}> = {x}"))?;
                }
            }
            degrees += 1;
        }
        for (i, j) in [(0, 1), (1, 0)] {
            ensure(serre_in_radical(&eng, i, j).map_err(e2s)?, || format!("{t}2: e-Serre ({i},{j})"))?;
            ensure(serre_in_radical_minus(&eng, i, j).map_err(e2s)?, || format!("{t}2: f-Serre ({i},{j})"))?;
        }
    }
    Ok(format!("{degrees} degrees"))
}

fn c7_modules() -> Outcome {
    let mut built = 0;
    for (t, n) in [(LieType::A, 1), (LieType::A, 2), (LieType::B, 2)] {
        let e = ed(t, n);
        let eng = PairingEngine::new(e.clone());
        let rs = &e.rs;
        for lam in dominant_box(rs, 4) {
            let m = simple_quotient(&eng, &lam, depth(rs, &lam).max(1)).map_err(e2s)?;
            let table = freudenthal(rs, &lam).map_err(e2s)?;
            let dims = m.weight_dims();
            let full = table.all_weights(rs);
            ensure(full.len() == dims.len(), || format!("{t}{n} L({lam}): weight support differs"))?;
            for (w, k) in full {
                ensure(dims.get(&w) == Some(&(k as usize)), || format!("{t}{n} L({lam}) at {w}"))?;
            }
            for c in relation_audit(&e, &eng, &m) {
                ensure(c.passed, || format!("{t}{n} L({lam}): {} {:?}", c.name, c.detail))?;
            }
            ensure(check_s2_twist(&e, &m), || format!("{t}{n} L({lam}): antipode-square twist"))?;
            built += 1;
        }
    }
    Ok(format!("{built} modules"))
}

fn c8_central() -> Outcome {
    let mut summary = Vec::new();
    for (t, n, lam_c) in [(LieType::A, 1, vec![2]), (LieType::A, 2, vec![1, 1])] {
        let e = ed(t, n);
        let eng = PairingEngine::new(e.clone());
        let rs = &e.rs;
        let lam = rs.from_omega_ints(&lam_c);
        ensure(lam.in_root_lattice(), || format!("{lam} is not in Q"))?;
        let z = build_z(&eng, &lam, LatticeForm::Root).map_err(e2s)?;
        let img = hc_image(rs, &lam, LatticeForm::Root).map_err(e2s)?;
        ensure(z.hc_projection(&e) == img.flat, || format!("{t}{n}: torus part of z({lam}) misses its image"))?;
        let modules = dominant_box(rs, 3);
        for nu in &modules {
            let m = simple_quotient(&eng, nu, depth(rs, nu).max(1)).map_err(e2s)?;
            let rep = verify_central(&e, &z, &m);
            ensure(rep.passed(), || format!("{t}{n}: z({lam}) on L({nu}): {:?}", rep.first_failure))?;
        }
        let l = simple_quotient(&eng, &lam, depth(rs, &lam).max(1)).map_err(e2s)?;
        let probes = default_probes(&eng, &z);
        ensure(probes.len() >= 10, || format!("only {} probes", probes.len()))?;
        for k in z.torus_part().support() {
            ensure(probes.contains(&RossoMonomial::torus(k.clone(), -k)), || format!("torus probe at {k} missing"))?;
        }
        for (p, (a, b)) in verify_trace_identity(&eng, &z, &l, &probes).iter().enumerate() {
            ensure(a == b, || format!("{t}{n}: probe {p}: {a} vs {b}"))?;
        }
        summary.push(format!("{t}{n}: {} modules, {} probes", modules.len(), probes.len()));
    }
    Ok(summary.join("; "))
}

fn suite_jobs(cache: &std::path::Path) -> Vec<JobSpec> {
    let mut jobs = Vec::new();
    let mk = |c: Command, t: &str, n: usize, ws: &[&str]| {
        let mut j = JobSpec::new(c, t, n);
        j.weights = ws.iter().map(|s| s.to_string()).collect();
        j.cache_dir = Some(cache.to_path_buf());
        j
    };
    for (t, n) in listed_types() {
        jobs.push(mk(Command::Matrices, &t.to_string(), n, &[]));
    }
    for (t, n) in [("A", 1), ("A", 2), ("B", 2), ("G", 2)] {
        let w = if n == 1 { "2" } else { "1,1" };
        jobs.push(mk(Command::Mults, t, n, &[w]));
        jobs.push(mk(Command::HcImage, t, n, &[w]));
        jobs.push(mk(Command::PolyExpress, t, n, &[w]));
        let mut v = mk(Command::Verify, t, n, &[]);
        v.suite = Some(if t == "G" { Suite::Hc } else { Suite::All });
        jobs.push(v);
    }
    jobs.push(mk(Command::Product, "A", 2, &["1,0", "0,1"]));
    let mut g = mk(Command::PairingGram, "G", 2, &["4,1"]);
    g.alpha_coords = true;
    jobs.push(g);
    let mut z = mk(Command::CentralElement, "A", 2, &["1,1"]);
    z.form = LatticeForm::Root;
    jobs.push(z);
    jobs
}

fn full_suite_document(cache: &std::path::Path) -> Result<Vec<u8>, String> {
    let mut doc = Vec::new();
    for j in suite_jobs(cache) {
        let out = run(&j);
        ensure(out.status == 0, || format!("{} {}{} exited {}: {}", j.command.name(), j.type_tag, j.rank, out.status, out.document))?;
        doc.extend_from_slice(out.document.as_bytes());
    }
    Ok(doc)
}

fn c9_determinism() -> Outcome {
    let d1 = tempfile::tempdir().map_err(e2s)?;
    let d2 = tempfile::tempdir().map_err(e2s)?;
    let a = full_suite_document(d1.path())?;
    let b = full_suite_document(d2.path())?;
    ensure(a == b, || "cold runs differ".into())?;
    let warm = full_suite_document(d1.path())?;
    ensure(a == warm, || "warm run differs from cold run".into())?;
    let rep = uqrs::cache::cache_roundtrip(d1.path()).map_err(e2s)?;
    ensure(rep.failures.is_empty() && !rep.checked.is_empty(), || format!("cache report {rep:?}"))?;
    Ok(format!("{} bytes, sha256 {}", a.len(), &hex::encode(Sha256::digest(&a))[..16]))
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("determinant tables", c1_determinants, secs(1)),
        ("symmetrized Cartan and reflections", c2_symmetrized, secs(1)),
        ("kernel witness", c3_kernel, secs(1)),
        ("multiplicity consistency", c4_multiplicities, secs(30)),
        ("Harish-Chandra images", c5_harish_chandra, secs(60)),
        ("pairing engine", c6_pairing, secs(300)),
        ("module audit", c7_modules, secs(120)),
        ("central elements", c8_central, secs(600)),
        ("determinism", c9_determinism, secs(600)),
    ];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let dt_res = f();
        let dt = start.elapsed();
        let res = dt_res.and_then(|d| {
            ensure(dt <= *budget, || format!("took {dt:.2?}, budget {budget:?}"))?;
            Ok(d)
        });
        total += dt;
        match res {
            Ok(detail) => println!("criterion {} ({name}): PASS [{:.2?}] {detail}", k + 1, dt),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{:.2?}] {why}", k + 1, dt);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), total);
    if failed > 0 {
        std::process::exit(1);
    }
}
