//! Acceptance gate: one pass/fail line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kummer_core::brauer::{extend_scalars, make_h_infty, make_hp, CSADescriptor, FieldDesc};
use kummer_core::golden::{
    check_embeddings, check_even_existence, check_odd_existence, check_rigid_algebras, check_singularities,
    check_traces, GoldenCheck,
};
use kummer_core::groups::{binary_dihedral_rigid_algebra, rigid_algebra, GroupId};
use kummer_core::kummer::{
    artin_check, assemble_construction, check_fixed_point_balance, check_torsion_conservation, exceptional_charpoly,
    singular_config, trace_of, ADEType, Construction, GraphAction, NSCharPoly, NsFragment, SingularOrbit,
};
use kummer_core::numtheory::{cyclotomic, divisors, euler_phi, IntPolynomial, PrimePower};
use kummer_core::weil::{enumerate_elliptic, enumerate_surface_supersingular};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn golden(checks: Vec<GoldenCheck>, expected: usize) -> Outcome {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
    if !failed.is_empty() {
        return Err(failed.join("; "));
    }
    if checks.len() != expected {
        return Err(format!("{} rows checked, expected {expected}", checks.len()));
    }
    Ok(format!("{} rows", checks.len()))
}

fn singularities() -> Outcome {
    let rows = golden(check_singularities(), 17)?;
    let twenty = ["C5", "C8", "C10", "C12", "Q16", "Q20", "Q24", "ESL2F3", "SL2F5"];
    for g in GroupId::katsura_list() {
        for c in singular_config(g).map_err(|e| e.to_string())? {
            let nodes = c.node_count();
            if nodes > 20 || (twenty.contains(&g.to_string().as_str()) && nodes != 20) {
                return Err(format!("{g}: {nodes} nodes"));
            }
        }
    }
    Ok(format!("{rows}, node counts consistent"))
}

fn traces() -> Outcome {
    let even = golden(check_traces(kummer_core::numtheory::Parity::Even), 14)?;
    let odd = golden(check_traces(kummer_core::numtheory::Parity::Odd), 14)?;
    Ok(format!("even {even}, odd {odd} (9 rows + 5 primes each)"))
}

fn embeddings() -> Outcome {
    golden(check_embeddings(1000), 10).map(|r| format!("{r}, all p < 1000"))
}

fn existence() -> Outcome {
    let even = golden(check_even_existence(1000), 13)?;
    let odd = golden(check_odd_existence(1000), 8)?;
    Ok(format!("even-degree {even}, odd-degree {odd}"))
}

fn rigid_algebras() -> Outcome {
    golden(check_rigid_algebras(), 28)
}

fn poly_trace(n: &NSCharPoly) -> BigInt {
    -n.polynomial().coeff(21)
}

fn zeta_assembly() -> Outcome {
    let cases: [(Construction, &[u64], &str); 3] = [
        (Construction::C4Rational, &[5, 9, 13, 25], "1^20,2^2"),
        (Construction::C4Mixed, &[5, 9, 13, 25], "1^15,2^7"),
        (Construction::Q8OddDegree, &[3, 7, 11, 27], "1^21,2"),
    ];
    let mut count = 0;
    for (c, qs, expected) in cases {
        for &qv in qs {
            let q = PrimePower::from_q(qv).map_err(|e| e.to_string())?;
            let a = assemble_construction(c, &q).map_err(|e| format!("{c} q={qv}: {e}"))?;
            if a.ns.to_string() != expected {
                return Err(format!("{c} q={qv}: got {}", a.ns));
            }
            if a.ns.parts().values().sum::<u32>() != 22 {
                return Err(format!("{c}: degree"));
            }
            if BigInt::from(a.trace) != poly_trace(&a.ns) || a.trace != trace_of(&a.ns) {
                return Err(format!("{c}: trace {}", a.trace));
            }
            if !artin_check(&q, &a.ns).accepted() {
                return Err(format!("{c} q={qv}: rejected by the Artin constraint"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} assemblies"))
}

fn weil_oracles() -> Outcome {
    let mut fields = 0;
    let mut polygons = 0;
    for (p, n, qv) in common::prime_powers(49) {
        let q = PrimePower::new(p, n).map_err(|e| e.to_string())?;
        let listed = enumerate_elliptic(&q);
        let got: Vec<i64> = listed.iter().map(|w| i64::try_from(w.trace()).unwrap()).collect();
        let want = common::elliptic_traces_brute(p, n, qv);
        if got != want {
            return Err(format!("q = {qv}: enumerated {got:?}, scan {want:?}"));
        }
        fields += 1;
        for w in listed.iter().chain(enumerate_surface_supersingular(&q).iter()) {
            let slopes: Vec<Ratio<i64>> = kummer_core::numtheory::newton_slopes(w.poly(), &q)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|s| Ratio::new(i64::from(s.numerator()), i64::from(s.denominator())))
                .collect();
            if slopes != common::newton_envelope_slopes(w.poly(), p, n) {
                return Err(format!("q = {qv}: slopes of {}", w.poly()));
            }
            polygons += 1;
        }
    }
    Ok(format!("{fields} fields, {polygons} Newton polygons"))
}

fn random_orbit(rng: &mut ChaCha8Rng) -> SingularOrbit {
    let ade = match rng.gen_range(0..3) {
        0 => ADEType::A(rng.gen_range(1..=11)),
        1 => ADEType::D(rng.gen_range(4..=8)),
        _ => ADEType::E(rng.gen_range(6..=8)),
    };
    let degree = rng.gen_range(1..=4);
    let count = degree * rng.gen_range(1..=2);
    let action =
        if matches!(ade, ADEType::A(_)) && rng.gen_bool(0.5) { GraphAction::ChainFlip } else { GraphAction::Trivial };
    SingularOrbit::with_field_data(ade, count, degree, action).unwrap()
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut built = 0;
    while built < 1000 {
        let mut frag = NsFragment::new();
        for _ in 0..rng.gen_range(0..4) {
            let f = exceptional_charpoly(&random_orbit(&mut rng)).map_err(|e| e.to_string())?;
            if frag.total() + f.total() <= 22 {
                frag.merge(&f);
            }
        }
        while frag.total() < 22 {
            let k = rng.gen_range(1..=12u32);
            if frag.total() + k <= 22 {
                frag.add_cycle(k, 1);
            }
        }
        let n = NSCharPoly::from_fragment(&frag).map_err(|e| format!("{frag:?}: {e}"))?;
        if n.parts().values().sum::<u32>() != 22 {
            return Err(format!("{n}: degree"));
        }
        if n.parts().iter().any(|(&r, &d)| d % euler_phi(u64::from(r)) as u32 != 0) {
            return Err(format!("{n}: φ(r) ∤ d_r"));
        }
        if BigInt::from(trace_of(&n)) != poly_trace(&n) {
            return Err(format!("{n}: trace"));
        }
        built += 1;
    }

    let mut algebras: Vec<CSADescriptor> = GroupId::all().into_iter().map(rigid_algebra).collect();
    for n in 2..=6 {
        algebras.push(binary_dihedral_rigid_algebra(n).map_err(|e| e.to_string())?);
    }
    let fields: Vec<FieldDesc> = [3, 4, 5, 8, 12, 7, 9, 15, 16, 20, 24]
        .iter()
        .map(|&m| FieldDesc::cyclotomic(m).unwrap())
        .chain([2, 3, 5, 6, 7, 10, -1, -2, -5].iter().map(|&d| FieldDesc::quadratic(d).unwrap()))
        .collect();
    for p in (2..200u64).filter(|&p| kummer_core::numtheory::is_prime(p)) {
        let h = make_hp(p).map_err(|e| e.to_string())?;
        algebras.push(h.matrix(2));
        for &k in &fields {
            algebras.push(extend_scalars(&h, k).map_err(|e| e.to_string())?);
        }
    }
    for k in [2, 3, 5, 6, 7].map(|d| FieldDesc::quadratic(d).unwrap()) {
        algebras.push(make_h_infty(k).map_err(|e| e.to_string())?);
    }
    for m in [5u64, 8, 12, 15, 16, 20, 24] {
        algebras.push(make_h_infty(FieldDesc::real_cyclotomic(m).unwrap()).map_err(|e| e.to_string())?);
    }
    for a in &algebras {
        if !a.reciprocity_sum().eq(&Ratio::from_integer(0)) {
            return Err(format!("{a}: invariants sum to {}", a.reciprocity_sum()));
        }
    }

    for r in 1..=240u64 {
        let prod: IntPolynomial = divisors(r).into_iter().map(cyclotomic).product();
        let mut want = vec![BigInt::from(0); r as usize + 1];
        want[0] = BigInt::from(-1);
        want[r as usize] = BigInt::from(1);
        if prod != IntPolynomial::new(want) {
            return Err(format!("∏ Φ_d ≠ t^{r} - 1"));
        }
    }

    let mut rows = 0;
    for g in GroupId::katsura_list() {
        check_torsion_conservation(g).map_err(|e| e.to_string())?;
        check_fixed_point_balance(g).map_err(|e| e.to_string())?;
        rows += singular_config(g).map_err(|e| e.to_string())?.len();
    }
    if rows != 17 {
        return Err(format!("{rows} stabilizer tables"));
    }
    Ok(format!("1000 NS spectra, {} algebras, r ≤ 240, {rows} torsion tables", algebras.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("singularity configurations", singularities),
        ("trace tables", traces),
        ("embedding table", embeddings),
        ("existence tables", existence),
        ("rigid algebra table", rigid_algebras),
        ("zeta assembly", zeta_assembly),
        ("Weil oracle equivalence", weil_oracles),
        ("property suites", properties),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS: {name} ({detail})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failures, criteria.len(), start.elapsed());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
