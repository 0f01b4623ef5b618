//! Seeded property suite behind `twoq selftest`.

use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;

use crate::circuit::{parse_circuit, Circuit};
use crate::haar::{haar_su2, haar_su4, haar_unitary, haar_unitary4, random_circuit, seeded_rng};
use crate::invariants::{chi_distance, cnot_cost, gamma, invariant_data};
use crate::numerics::{kron, sigma_y, Mat2, Mat4};
use crate::rewrite::{reduce, rule_soundness_defect, RuleId};
use crate::synthesis::{match_local_factors, synthesize, GateLibrary};

type Check = fn(&mut ChaCha8Rng) -> f64;

struct Property {
    name: &'static str,
    tolerance: f64,
    /// Deterministic checks run once regardless of the trial count.
    once: bool,
    check: Check,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub worst: f64,
    pub tolerance: f64,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelftestReport {
    pub trials: usize,
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::ok)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# selftest: {} trials, seed {}", self.trials, self.seed);
        let _ = writeln!(out, "{:<22} {:>11} {:>11} {:>9}  status", "property", "passed", "worst", "tol");
        for o in &self.outcomes {
            let status = if o.ok() { "PASS" } else { "FAIL" };
            let passed = format!("{}/{}", o.passed, o.total);
            let _ = writeln!(out, "{:<22} {:>11} {:>11.3e} {:>9.0e}  {status}", o.name, passed, o.worst, o.tolerance);
        }
        let failed = self.outcomes.iter().filter(|o| !o.ok()).count();
        if failed == 0 {
            let _ = writeln!(out, "all {} properties passed", self.outcomes.len());
        } else {
            let _ = writeln!(out, "{failed} of {} properties FAILED", self.outcomes.len());
        }
        out
    }
}

const PROPERTIES: &[Property] = &[
    Property { name: "gamma_identity", tolerance: 1e-12, once: true, check: gamma_identity },
    Property { name: "gamma_product", tolerance: 1e-10, once: false, check: gamma_product },
    Property { name: "gamma_tensor", tolerance: 1e-10, once: false, check: gamma_tensor },
    Property { name: "gamma_local_det", tolerance: 1e-10, once: false, check: gamma_local_det },
    Property { name: "gamma_left_coset", tolerance: 1e-10, once: false, check: gamma_left_coset },
    Property { name: "chi_double_coset", tolerance: 1e-9, once: false, check: chi_double_coset },
    Property { name: "cost_generic", tolerance: 0.0, once: false, check: cost_generic },
    Property { name: "match_local_factors", tolerance: 1e-8, once: false, check: match_factors },
    Property { name: "synth_cyz", tolerance: 1e-8, once: false, check: |r| synth(r, GateLibrary::Cyz) },
    Property { name: "synth_cxy", tolerance: 1e-8, once: false, check: |r| synth(r, GateLibrary::Cxy) },
    Property { name: "synth_cxz", tolerance: 1e-8, once: false, check: |r| synth(r, GateLibrary::Cxz) },
    Property { name: "synth_basic", tolerance: 1e-8, once: false, check: |r| synth(r, GateLibrary::Basic) },
    Property { name: "rule_soundness", tolerance: 1e-12, once: true, check: rule_soundness },
    Property { name: "reduce_semantics", tolerance: 1e-10, once: false, check: reduce_semantics },
];

/// Runs every property `trials` times. Each property draws from its own
/// ChaCha stream of `seed`, so reports depend only on `(trials, seed)`.
pub fn run_selftest(trials: usize, seed: u64) -> SelftestReport {
    let outcomes = PROPERTIES
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let mut rng = seeded_rng(seed);
            rng.set_stream(idx as u64);
            let total = if p.once { 1 } else { trials };
            let mut passed = 0;
            let mut worst: f64 = 0.0;
            for _ in 0..total {
                let defect = (p.check)(&mut rng);
                // NaN counts as a failure
                if defect <= p.tolerance {
                    passed += 1;
                }
                worst = if defect.is_nan() { f64::NAN } else { worst.max(defect) };
            }
            PropertyOutcome { name: p.name, passed, total, worst, tolerance: p.tolerance }
        })
        .collect();
    SelftestReport { trials, seed, outcomes }
}

fn gamma2(a: &Mat2) -> Mat2 {
    let s = sigma_y();
    *a * s * a.transpose() * s
}

fn local<R: rand::Rng>(rng: &mut R) -> Mat4 {
    kron(&haar_su2(rng), &haar_su2(rng))
}

fn gamma_identity(_: &mut ChaCha8Rng) -> f64 {
    (gamma(&Mat4::identity()).expect("unitary") - Mat4::identity()).norm()
}

fn gamma_product(rng: &mut ChaCha8Rng) -> f64 {
    let a = haar_unitary4(rng);
    let b = haar_unitary4(rng);
    let lhs = gamma(&(a * b)).expect("unitary");
    let rhs = a * gamma(&b).expect("unitary") * gamma(&a.transpose()).expect("unitary").transpose() * a.adjoint();
    (lhs - rhs).norm()
}

fn gamma_tensor(rng: &mut ChaCha8Rng) -> f64 {
    let a = haar_unitary::<2, _>(rng);
    let b = haar_unitary::<2, _>(rng);
    (gamma(&kron(&a, &b)).expect("unitary") - kron(&gamma2(&a), &gamma2(&b))).norm()
}

fn gamma_local_det(rng: &mut ChaCha8Rng) -> f64 {
    let a = haar_unitary::<2, _>(rng);
    let b = haar_unitary::<2, _>(rng);
    let expected = Mat4::identity().scale(a.det() * b.det());
    (gamma(&kron(&a, &b)).expect("unitary") - expected).norm()
}

fn gamma_left_coset(rng: &mut ChaCha8Rng) -> f64 {
    let u = haar_su4(rng);
    let k = local(rng);
    (gamma(&(u * k)).expect("unitary") - gamma(&u).expect("unitary")).norm()
}

fn chi_double_coset(rng: &mut ChaCha8Rng) -> f64 {
    let u = haar_unitary4(rng);
    let v = local(rng) * u * local(rng);
    let cu = invariant_data(&u).expect("unitary").chi;
    let cv = invariant_data(&v).expect("unitary").chi;
    chi_distance(&cu, &cv)
}

fn cost_generic(rng: &mut ChaCha8Rng) -> f64 {
    match cnot_cost(&haar_unitary4(rng)) {
        Ok(3) => 0.0,
        _ => 1.0,
    }
}

fn match_factors(rng: &mut ChaCha8Rng) -> f64 {
    let v = haar_unitary4(rng);
    let u = local(rng) * v * local(rng);
    match match_local_factors(&u, &v) {
        Ok(f) => f.residual(&u, &v),
        Err(_) => f64::INFINITY,
    }
}

/// Residual of the synthesized circuit after a text round trip; infinite
/// when a gate count bound is violated.
fn synth(rng: &mut ChaCha8Rng, lib: GateLibrary) -> f64 {
    let u = haar_unitary4(rng);
    let Ok(r) = synthesize(&u, lib) else { return f64::INFINITY };
    let counts_ok = r.cnot_count == 3
        && lib.admits(&r.circuit)
        && match lib {
            GateLibrary::Basic => r.basic_count <= 10,
            _ => r.one_param_count <= 15,
        };
    if !counts_ok {
        return f64::INFINITY;
    }
    match parse_circuit(&r.circuit.to_text()) {
        Ok(c) => r.residual.max(c.matrix().phase_distance(&u)),
        Err(_) => f64::INFINITY,
    }
}

fn rule_soundness(_: &mut ChaCha8Rng) -> f64 {
    RuleId::ALL.iter().map(|&id| rule_soundness_defect(id)).fold(0.0, f64::max)
}

fn reduce_semantics(rng: &mut ChaCha8Rng) -> f64 {
    let c: Circuit = random_circuit(rng, 30);
    let (r, trace) = reduce(&c);
    if r.len() > c.len() || trace.replay(&c).ok().as_ref() != Some(&r) {
        return f64::INFINITY;
    }
    r.matrix().phase_distance(&c.matrix())
}
