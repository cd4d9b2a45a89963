//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Set `E10_ACCEPTANCE_LONG=1` for the long runs.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use e10_core::borcherds::{bound_gm, correction_at_delta, denominator_check, multiplicity_table, PetersonSolver};
use e10_core::lattice::{
    cartan_matrix, delta, fundamental_weight_vectors, gram, reflect, reflect_matrix_form, weyl_vector, LatticeVector, GENERATORS,
    RANK,
};
use e10_core::octonion::{e8_simple_roots, highest_root, oct_mul, trace_form, THETA_MARKS};
use e10_core::qseries::{
    asymptotic_ratio, f_e10, multipartition, mu_from_m, product_from_mu, weyl_vector_constants, A_LISTED,
};
use e10_core::{qseries, rank2, rank3, Octonion};

type Check = fn() -> Result<String, String>;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

fn c1_f_expansion() -> Result<String, String> {
    let t = Instant::now();
    let f = f_e10(50);
    let e = within(t, Duration::from_secs(1), "f at prec 50")?;
    let want = [1i64, 504, 73764, 2695040];
    for (n, w) in (-1..=2).zip(want) {
        let c = f.coeff(n).map_err(|e| e.to_string())?;
        ensure(c == b(w), format!("c({n}) = {c}, expected {w}"))?;
    }
    Ok(format!("c(-1..2) = 1, 504, 73764, 2695040 in {e:?}"))
}

fn c2_weyl_constants() -> Result<String, String> {
    let k = weyl_vector_constants().map_err(|e| e.to_string())?;
    ensure(k.m == b(30), format!("m = {}", k.m))?;
    ensure(k.d == b(744), format!("d = {}", k.d))?;
    ensure(k.weight == b(252), format!("weight = {}", k.weight))?;
    Ok("m = 30, d = 744, weight 252".into())
}

fn c3_lattice() -> Result<String, String> {
    let t = Instant::now();
    let g = gram();
    ensure(*g == cartan_matrix(), "Gram matrix differs from the generalised Cartan matrix")?;
    let rho = weyl_vector().map_err(|e| e.to_string())?;
    for i in GENERATORS {
        let a = LatticeVector::simple(i).map_err(|e| e.to_string())?;
        ensure(rho.bilinear(&a) == -1, format!("(rho, a{i}) = {}", rho.bilinear(&a)))?;
    }
    ensure(rho.qnorm() == -1240, format!("(rho, rho) = {}", rho.qnorm()))?;
    highest_root().map_err(|e| e.to_string())?;
    ensure(THETA_MARKS.iter().sum::<i64>() == 29, "marks of theta")?;
    let e = within(t, Duration::from_secs(1), "lattice checks")?;
    Ok(format!("GCM, (rho, a_i) = -1, (rho, rho) = -1240, theta consistent in {e:?}"))
}

fn c4_denominator() -> Result<String, String> {
    let long = std::env::var_os("E10_ACCEPTANCE_LONG").is_some();
    let mut parts = Vec::new();
    let hs: &[i64] = if long { &[6, 10, 16] } else { &[6, 10] };
    for &h in hs {
        let t = Instant::now();
        let r = denominator_check(h).map_err(|e| e.to_string())?;
        let e = t.elapsed();
        ensure(r.pass(), format!("H = {h}: {} discrepancies, max {}", r.discrepancies, r.max_abs_discrepancy))?;
        ensure(r.orbit_checked > 0 && r.antisymmetry_checked > 0, format!("H = {h}: nothing checked"))?;
        parts.push(format!(
            "H={h}: {} orbit, {} antisymmetry, {} off-orbit nonzero, {e:?}",
            r.orbit_checked, r.antisymmetry_checked, r.off_orbit_checked
        ));
    }
    Ok(parts.join("; "))
}

fn c5_dominance() -> Result<String, String> {
    let t = Instant::now();
    let mut solver = PetersonSolver::new(e10_core::borcherds::DELTA_HEIGHT);
    let rows = multiplicity_table(8, &mut solver, false).map_err(|e| e.to_string())?;
    for r in &rows {
        ensure(r.dominated(), format!("{} has mult {} above its bounds", r.root, r.peterson))?;
        if let Some(nb) = &r.bound_niemann {
            ensure(&r.peterson <= nb, format!("{} exceeds the cycle-shape bound", r.root))?;
        }
    }
    let m = solver.multiplicity(&delta()).map_err(|e| e.to_string())?;
    let gm = multipartition(9, 1) - multipartition(9, 0);
    ensure(m == b(8) && gm == b(8), format!("mult(delta) = {m}, p9(1) - p9(0) = {gm}"))?;
    // rows up to height 8 are all real; the lowest norm -2 root adds an imaginary case
    let lam0 = fundamental_weight_vectors()[1].neg();
    let mut deep = PetersonSolver::new(lam0.height());
    let m2 = deep.multiplicity(&lam0).map_err(|e| e.to_string())?;
    let gm2 = bound_gm(&lam0).map_err(|e| e.to_string())?;
    let c_det = f_e10(lam0.det() + 1).coeff(lam0.det()).map_err(|e| e.to_string())?;
    ensure(m2 == b(44) && m2 <= gm2 && m2 <= c_det, format!("mult(-lambda_0) = {m2}, bounds {gm2}, {c_det}"))?;
    let e = within(t, Duration::from_secs(60), "dominance suite")?;
    let mut extra = format!(", mult(-lambda_0) = 44 <= {gm2}");
    if std::env::var_os("E10_ACCEPTANCE_LONG").is_some() {
        let corr = correction_at_delta().map_err(|e| e.to_string())?;
        let c0 = f_e10(1).coeff(0).map_err(|e| e.to_string())?;
        ensure(&c0 - &corr == b(8), format!("c(0) - m(delta) = {}", &c0 - &corr))?;
        extra.push_str(&format!(", c(0) - m(delta) = 504 - {corr} = 8"));
    }
    Ok(format!("{} roots of height <= 8 dominated, mult(delta) = 8{extra} in {e:?}", rows.len()))
}

fn c6_rank3() -> Result<String, String> {
    let t = Instant::now();
    let phi = rank3::phi01(11).map_err(|e| e.to_string())?;
    ensure(phi.c(0).map_err(|e| e.to_string())? == b(10), "c(0) != 10")?;
    ensure(phi.c(-1).map_err(|e| e.to_string())? == b(1), "c(-1) != 1")?;
    let theta = rank3::phi01_theta(11).map_err(|e| e.to_string())?;
    let prod = rank3::phi01_product(11).map_err(|e| e.to_string())?;
    ensure(theta == prod, "the two constructions of phi_{0,1} disagree")?;
    let a = rank3::delta35_product(5, 5).map_err(|e| e.to_string())?;
    ensure(a.get(&rank3::P) == Some(&b(1)), "leading coefficient of Delta35 is not 1")?;
    let rep = rank3::delta35_check(&a, 5, 5);
    ensure(rep.pass(), format!("{} antisymmetry failures", rep.failures.len()))?;
    let e = within(t, Duration::from_secs(60), "rank-3 suite")?;
    Ok(format!("phi01 radial through n = 10, routes agree, {} antisymmetry pairs at (5,5) in {e:?}", rep.checked))
}

fn c7_rank2() -> Result<String, String> {
    let t = Instant::now();
    ensure(rank2::omega_k(1) == vec![(1, 1)], "Omega_1 != {(1,1)}")?;
    let f = qseries::gamma05_form(12).map_err(|e| e.to_string())?;
    for (n, w) in A_LISTED.iter().enumerate() {
        let c = f.coeff(n as i64).map_err(|e| e.to_string())?;
        ensure(c == b(*w), format!("a({n}) = {c}, expected {w}"))?;
    }
    let p = rank2::product_side_rank2(16).map_err(|e| e.to_string())?;
    ensure(p.coeff(rank2::RHO_COORDS) == b(1), "A(rho) != 1")?;
    let rep = rank2::skew_check(&p);
    ensure(rep.pass(), format!("{} skew failures", rep.failures.len()))?;
    let e = within(t, Duration::from_secs(10), "rank-2 suite")?;
    Ok(format!("Omega_1, a(0..10), {} skew pairs over {} coefficients in {e:?}", rep.checked, p.terms.len()))
}

fn c8_asymptotics() -> Result<String, String> {
    let f = f_e10(41);
    let r10 = asymptotic_ratio(10, &f).map_err(|e| e.to_string())?;
    let r40 = asymptotic_ratio(40, &f).map_err(|e| e.to_string())?;
    let (d10, d40) = ((r10 - 1.0).abs(), (r40 - 1.0).abs());
    ensure(d40 < d10, format!("|ratio - 1| is {d40} at 40 and {d10} at 10"))?;
    ensure(d40 < 0.1, format!("|ratio - 1| = {d40} at 40"))?;
    Ok(format!("|ratio - 1| = {d10:.3e} at 10, {d40:.3e} at 40"))
}

fn c9_mu_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..100 {
        let m: Vec<BigInt> = (0..12).map(|_| b(rng.gen_range(-50..=50))).collect();
        let mu = mu_from_m(&m);
        let prod = product_from_mu(&mu);
        let mut want = vec![b(1)];
        want.extend(m.iter().map(|x| -x));
        ensure(prod == want, format!("case {case}: round trip failed for {m:?}"))?;
    }
    Ok("100 random sequences of length 12".into())
}

fn rand_oct(rng: &mut ChaCha8Rng) -> Octonion {
    let mut c = [0i64; 8];
    for x in &mut c {
        *x = rng.gen_range(-9..=9);
    }
    Octonion::from_halves(c)
}

fn c10_kernels() -> Result<String, String> {
    const N: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..N {
        let (x, y) = (rand_oct(&mut rng), rand_oct(&mut rng));
        ensure(oct_mul(&x, &y).norm() == x.norm() * y.norm(), format!("norm not multiplicative at {x}, {y}"))?;
        ensure(oct_mul(&oct_mul(&x, &x), &y) == oct_mul(&x, &oct_mul(&x, &y)), format!("left alternativity at {x}, {y}"))?;
        ensure(oct_mul(&oct_mul(&y, &x), &x) == oct_mul(&y, &oct_mul(&x, &x)), format!("right alternativity at {x}, {y}"))?;
    }
    let roots = e8_simple_roots();
    let c = cartan_matrix();
    let e8 = |i: usize, j: usize| c[i + 2][j + 2];
    for _ in 0..N {
        let u: Vec<i64> = (0..8).map(|_| rng.gen_range(-5..=5)).collect();
        let v: Vec<i64> = (0..8).map(|_| rng.gen_range(-5..=5)).collect();
        let comb = |w: &[i64]| w.iter().zip(roots.iter()).fold(Octonion::zero(), |acc, (k, r)| acc + r.scale_int(*k));
        let lhs = trace_form(&comb(&u), &comb(&v));
        let rhs: i64 = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).map(|(i, j)| u[i] * e8(i, j) * v[j]).sum();
        ensure(lhs == BigRational::from_integer(b(rhs)), format!("E8 Gram mismatch for {u:?}, {v:?}"))?;
    }
    for _ in 0..N {
        let mut coords = [0i64; RANK];
        for x in &mut coords {
            *x = rng.gen_range(-20..=20);
        }
        let x = LatticeVector(coords).to_herm();
        let i = GENERATORS[rng.gen_range(0..RANK)];
        let a = reflect(i, &x).map_err(|e| e.to_string())?;
        let m = reflect_matrix_form(i, &x).map_err(|e| e.to_string())?;
        ensure(a == m, format!("reflection forms differ for w{i} at {x}"))?;
    }
    Ok(format!("{N} cases each: norm, alternativity, E8 Gram, reflection forms"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("f expansion", c1_f_expansion),
        ("Weyl vector constants", c2_weyl_constants),
        ("lattice sanity", c3_lattice),
        ("denominator identity", c4_denominator),
        ("multiplicity dominance", c5_dominance),
        ("rank-3 companion", c6_rank3),
        ("rank-2 companion", c7_rank2),
        ("asymptotics", c8_asymptotics),
        ("mu round trip", c9_mu_round_trip),
        ("kernel properties", c10_kernels),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let label = format!("criterion {} ({name})", n + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let out = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match out {
            Ok(detail) => println!("{label} ... PASS [{detail}]"),
            Err(why) => {
                failed += 1;
                println!("{label} ... FAIL [{why}]");
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
