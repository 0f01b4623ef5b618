//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;
use twoq::circuit::{parse_circuit, Circuit, Gate};
use twoq::cli::{qft2, run};
use twoq::haar::{haar_su2, haar_su4, haar_unitary, haar_unitary4, random_circuit, seeded_rng};
use twoq::invariants::{chi_distance, cnot_cost, cnot_lower_bound, gamma, invariant_data};
use twoq::numerics::{kron, sigma_y, Mat2, Mat4, C64};
use twoq::rewrite::{effectively_separated, reduce, registry, rule_soundness_defect, DEFAULT_DEPTH};
use twoq::synthesis::{enumerate_circuits, match_local_factors, synthesize, GateLibrary};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn samples(seed: u64, n: usize) -> Vec<Mat4> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| haar_unitary4(&mut rng)).collect()
}

fn ac1() -> Outcome {
    let inputs = samples(1001, 1000);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut max_rot = 0;
    for lib in [GateLibrary::Cyz, GateLibrary::Cxy, GateLibrary::Cxz] {
        for (k, u) in inputs.iter().enumerate() {
            let r = synthesize(u, lib).map_err(|e| format!("{lib} sample {k}: {e}"))?;
            ensure(r.cnot_count == 3, || format!("{lib} sample {k}: {} CNOTs", r.cnot_count))?;
            ensure(r.one_param_count <= 15, || format!("{lib} sample {k}: {} rotations", r.one_param_count))?;
            ensure(lib.admits(&r.circuit), || format!("{lib} sample {k}: gate outside library"))?;
            ensure(r.residual <= 1e-8, || format!("{lib} sample {k}: residual {:e}", r.residual))?;
            worst = worst.max(r.residual);
            max_rot = max_rot.max(r.one_param_count);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("3000 circuits, 3 CNOTs, <= {max_rot} rotations, worst residual {worst:.2e}, {secs:.2}s"))
}

fn ac2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut max_basic = 0;
    for (k, u) in samples(1001, 1000).iter().enumerate() {
        let r = synthesize(u, GateLibrary::Basic).map_err(|e| format!("sample {k}: {e}"))?;
        ensure(r.cnot_count == 3, || format!("sample {k}: {} CNOTs", r.cnot_count))?;
        ensure(r.basic_count <= 10, || format!("sample {k}: {} basic gates", r.basic_count))?;
        ensure(r.residual <= 1e-8, || format!("sample {k}: residual {:e}", r.residual))?;
        worst = worst.max(r.residual);
        max_basic = max_basic.max(r.basic_count);
    }
    Ok(format!("1000 circuits, <= {max_basic} basic gates, worst residual {worst:.2e}"))
}

/// `S_y† T … T³ … T S_y` on the top wire with three CNOTs, in application order.
fn qft2_hand_circuit() -> Circuit {
    Circuit::new(vec![
        Gate::ry(0, -FRAC_PI_2),
        Gate::rz(0, FRAC_PI_4),
        Gate::cnot(1, 0),
        Gate::rz(0, 3.0 * FRAC_PI_4),
        Gate::cnot(0, 1),
        Gate::cnot(1, 0),
        Gate::rz(0, FRAC_PI_4),
        Gate::ry(0, FRAC_PI_2),
    ])
    .expect("valid gates")
}

fn ac3() -> Outcome {
    let f = qft2();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["twoq", "synth", "--gate", "qft2"], &mut out, &mut err);
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    let c = parse_circuit(&String::from_utf8_lossy(&out)).map_err(|e| e.to_string())?;
    let residual = c.matrix().phase_distance(&f);
    ensure(c.cnot_count() == 3, || format!("{} CNOTs", c.cnot_count()))?;
    ensure(residual <= 1e-10, || format!("residual {residual:e}"))?;

    let hand = qft2_hand_circuit();
    let hand_residual = hand.matrix().phase_distance(&f);
    ensure(hand_residual <= 1e-10, || format!("hand circuit residual {hand_residual:e}"))?;
    ensure(hand.cnot_count() == 3 && hand.basic_count() == 6, || {
        format!("hand circuit: {} CNOTs, {} basic gates", hand.cnot_count(), hand.basic_count())
    })?;

    let best_basic = enumerate_circuits(&f, GateLibrary::Basic, 48)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.basic_count)
        .min()
        .unwrap_or(usize::MAX);
    Ok(format!(
        "synth: 3 CNOTs, residual {residual:.2e}; merged reference: 3 one-qubit + 3 CNOT, residual {hand_residual:.2e}; \
         best synthesized basic count {best_basic}"
    ))
}

fn gamma2(a: &Mat2) -> Mat2 {
    let s = sigma_y();
    *a * s * a.transpose() * s
}

fn local<R: Rng>(rng: &mut R) -> Mat4 {
    kron(&haar_su2(rng), &haar_su2(rng))
}

fn ac4() -> Outcome {
    let n = 500;
    let g = |m: &Mat4| gamma(m).expect("unitary");
    let mut rng = seeded_rng(1004);
    let mut worst = [0.0f64; 6];
    worst[0] = (g(&Mat4::identity()) - Mat4::identity()).norm();
    for _ in 0..n {
        let a = haar_unitary4(&mut rng);
        let b = haar_unitary4(&mut rng);
        let rhs = a * g(&b) * g(&a.transpose()).transpose() * a.adjoint();
        worst[1] = worst[1].max((g(&(a * b)) - rhs).norm());

        let x = haar_unitary::<2, _>(&mut rng);
        let y = haar_unitary::<2, _>(&mut rng);
        let xy = kron(&x, &y);
        worst[2] = worst[2].max((g(&xy) - kron(&gamma2(&x), &gamma2(&y))).norm());
        worst[3] = worst[3].max((g(&xy) - Mat4::identity().scale(x.det() * y.det())).norm());

        let u = haar_su4(&mut rng);
        worst[4] = worst[4].max((g(&(u * local(&mut rng))) - g(&u)).norm());

        let v = haar_unitary4(&mut rng).scale(C64::from_polar(1.0, rng.random_range(-3.0..3.0)));
        let w = local(&mut rng) * v * local(&mut rng);
        let d = chi_distance(
            &invariant_data(&v).map_err(|e| e.to_string())?.chi,
            &invariant_data(&w).map_err(|e| e.to_string())?.chi,
        );
        worst[5] = worst[5].max(d);
    }
    for (k, w) in worst[..5].iter().enumerate() {
        ensure(*w <= 1e-10, || format!("property ({}) defect {w:e}", k + 1))?;
    }
    ensure(worst[5] <= 1e-9, || format!("chi defect {:e}", worst[5]))?;
    let max5 = worst[..5].iter().cloned().fold(0.0, f64::max);
    Ok(format!("{n} instances; (1)-(5) worst {max5:.2e}; (6) chi worst {:.2e}", worst[5]))
}

fn ac5() -> Outcome {
    let mut rng = seeded_rng(1005);
    let mut worst: f64 = 0.0;
    for k in 0..500 {
        let v = haar_unitary4(&mut rng);
        let u = (local(&mut rng) * v * local(&mut rng)).scale(C64::from_polar(1.0, rng.random_range(-3.0..3.0)));
        let f = match_local_factors(&u, &v).map_err(|e| format!("instance {k}: {e}"))?;
        let r = f.residual(&u, &v);
        ensure(r <= 1e-8, || format!("instance {k}: residual {r:e}"))?;
        worst = worst.max(r);
    }
    Ok(format!("500 instances, worst residual {worst:.2e}"))
}

fn ac6() -> Outcome {
    let cost = |u: &Mat4| cnot_cost(u).map_err(|e| e.to_string());
    let mut rng = seeded_rng(1006);
    ensure(cost(&Mat4::identity())? == 0, || "identity".into())?;
    for _ in 0..20 {
        let l = kron(&haar_unitary::<2, _>(&mut rng), &haar_unitary::<2, _>(&mut rng));
        ensure(cost(&l)? == 0, || "random local".into())?;
    }
    let cnot = Gate::cnot(0, 1).matrix();
    let cz = Mat4::diag([1.0, 1.0, 1.0, -1.0].map(|x| C64::new(x, 0.0)));
    ensure(cost(&cnot)? == 1, || "CNOT".into())?;
    ensure(cost(&Gate::cnot(1, 0).matrix())? == 1, || "reversed CNOT".into())?;
    ensure(cost(&cz)? == 1, || "CZ".into())?;
    for k in 0..50 {
        let (t, p) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
        let c = Circuit::new(vec![Gate::cnot(0, 1), Gate::rx(0, t), Gate::rz(1, p), Gate::cnot(0, 1)]).expect("valid");
        let u = local(&mut rng) * c.matrix() * local(&mut rng);
        ensure(cost(&u)? == 2, || format!("two-CNOT instance {k} (θ={t}, φ={p})"))?;
    }
    ensure(cost(&Gate::Swap.matrix())? == 3, || "SWAP".into())?;
    let generic = samples(1016, 1000).iter().map(cost).collect::<Result<Vec<_>, _>>()?;
    let threes = generic.iter().filter(|&&c| c == 3).count();
    ensure(threes >= 999, || format!("only {threes}/1000 random samples need 3 CNOTs"))?;
    Ok(format!("named cases ok; {threes}/1000 random samples need 3 CNOTs"))
}

fn ac7() -> Outcome {
    ensure(cnot_lower_bound(2) == Ok(3), || "n=2".into())?;
    ensure(cnot_lower_bound(3) == Ok(14), || "n=3".into())?;
    ensure(cnot_lower_bound(0).is_err(), || "n=0 accepted".into())?;
    for n in 1..=8u32 {
        let num = BigInt::from(4).pow(n) - BigInt::from(3 * n) - BigInt::from(1);
        let expected = (num + BigInt::from(3)) / BigInt::from(4);
        let got = cnot_lower_bound(n).map_err(|e| e.to_string())?;
        ensure(BigInt::from(got) == expected, || format!("n={n}: {got} vs {expected}"))?;
    }
    Ok("n = 1..8 match big-integer ceiling".into())
}

fn ac8() -> Outcome {
    let rules = registry().map_err(|e| e.to_string())?;
    let mut worst_rule: f64 = 0.0;
    for r in rules {
        let d = rule_soundness_defect(r.id);
        ensure(d <= 1e-12, || format!("{}: defect {d:e}", r.id.name()))?;
        worst_rule = worst_rule.max(d);
    }
    let mut rng = seeded_rng(1008);
    let mut worst: f64 = 0.0;
    let mut removed = 0;
    for k in 0..500 {
        let c = random_circuit(&mut rng, 30);
        let (r, _) = reduce(&c);
        let d = r.matrix().phase_distance(&c.matrix());
        ensure(d <= 1e-10, || format!("circuit {k}: defect {d:e}"))?;
        ensure(r.len() <= c.len(), || format!("circuit {k}: grew"))?;
        worst = worst.max(d);
        removed += c.len() - r.len();
    }
    Ok(format!(
        "{} rules, worst rule defect {worst_rule:.2e}; 500 reductions, worst {worst:.2e}, {removed} gates removed",
        rules.len()
    ))
}

fn ac9() -> Outcome {
    let check = |gates: Vec<Gate>| -> Result<bool, String> {
        effectively_separated(&Circuit::new(gates).map_err(|e| e.to_string())?, DEFAULT_DEPTH).map_err(|e| e.to_string())
    };
    let a = check(vec![Gate::cnot(0, 1), Gate::rx(0, 0.7), Gate::cnot(1, 0)])?;
    let b = check(vec![Gate::cnot(1, 0), Gate::rx(1, 0.7), Gate::cnot(1, 0)])?;
    let c = check(vec![
        Gate::cnot(1, 0),
        Gate::rx(1, 0.3),
        Gate::cnot(1, 0),
        Gate::rz(0, 0.5),
        Gate::cnot(1, 0),
        Gate::rx(1, 0.9),
        Gate::cnot(1, 0),
    ])?;
    ensure((a, b, c) == (false, true, false), || format!("got ({a}, {b}, {c})"))?;
    Ok(format!("({a}, {b}, {c}) at depth {DEFAULT_DEPTH}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 universal synthesis CYZ/CXY/CXZ", ac1),
        ("AC2 basic-gate synthesis", ac2),
        ("AC3 QFT2 regression", ac3),
        ("AC4 invariant properties", ac4),
        ("AC5 local factor matching", ac5),
        ("AC6 CNOT-cost classifier", ac6),
        ("AC7 CNOT lower bound", ac7),
        ("AC8 rewrite soundness", ac8),
        ("AC9 effective separation", ac9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {}/9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
