//! Circuit identities, a greedy reducer and the effective-separation check.
//!
//! Two-gate patterns match *wire-adjacent* gates: the partner of gate `i` is
//! the next gate touching one of its wires. The gates skipped in between act
//! on other wires only, so they commute with gate `i` and are kept in front
//! of the replacement.

mod separation;

use std::fmt;
use std::sync::OnceLock;

use crate::circuit::{Axis, Circuit, Gate};
use crate::numerics::{sigma_x, sigma_z, Mat2};
use crate::{Error, Result};

pub use separation::{effectively_separated, separation_report, SeparationReport, DEFAULT_DEPTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    CancelCnot,
    CancelSwap,
    CnotPairToSwap,
    CommuteRxTarget,
    CommuteRzControl,
    CommuteSxTarget,
    CommuteSzControl,
    MoveSigmaX,
    MoveSigmaZ,
    MoveCnotViaSwap,
    Move1qViaSwap,
    MergeRotations,
    AxisChange,
    FlipCnotPair,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::CancelCnot,
        RuleId::CancelSwap,
        RuleId::CnotPairToSwap,
        RuleId::CommuteRxTarget,
        RuleId::CommuteRzControl,
        RuleId::CommuteSxTarget,
        RuleId::CommuteSzControl,
        RuleId::MoveSigmaX,
        RuleId::MoveSigmaZ,
        RuleId::MoveCnotViaSwap,
        RuleId::Move1qViaSwap,
        RuleId::MergeRotations,
        RuleId::AxisChange,
        RuleId::FlipCnotPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::CancelCnot => "CancelCNOT",
            RuleId::CancelSwap => "CancelSWAP",
            RuleId::CnotPairToSwap => "CNOTPairToSWAP",
            RuleId::CommuteRxTarget => "CommuteRxTarget",
            RuleId::CommuteRzControl => "CommuteRzControl",
            RuleId::CommuteSxTarget => "CommuteSxTarget",
            RuleId::CommuteSzControl => "CommuteSzControl",
            RuleId::MoveSigmaX => "MoveSigmaX",
            RuleId::MoveSigmaZ => "MoveSigmaZ",
            RuleId::MoveCnotViaSwap => "MoveCNOTviaSWAP",
            RuleId::Move1qViaSwap => "Move1QviaSWAP",
            RuleId::MergeRotations => "MergeRotations",
            RuleId::AxisChange => "AxisChange",
            RuleId::FlipCnotPair => "FlipCNOTPair",
        }
    }

    /// Number of gates in the forward left-hand side (the flip rule matches 3 or 4).
    pub fn arity(self) -> usize {
        match self {
            RuleId::FlipCnotPair => 4,
            _ => 2,
        }
    }

    /// Whether the rule can also be applied right-to-left.
    pub fn bidirectional(self) -> bool {
        !matches!(
            self,
            RuleId::CancelCnot | RuleId::CancelSwap | RuleId::MergeRotations | RuleId::MoveSigmaX | RuleId::MoveSigmaZ
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: RuleId,
    pub arity: usize,
    pub bidirectional: bool,
}

/// All rules, each checked numerically on its witness segments the first
/// time the registry is used.
pub fn registry() -> Result<&'static [RewriteRule]> {
    static REGISTRY: OnceLock<Result<Vec<RewriteRule>>> = OnceLock::new();
    REGISTRY
        .get_or_init(|| {
            RuleId::ALL
                .iter()
                .map(|&id| {
                    verify_rule(id)?;
                    Ok(RewriteRule {
                        id,
                        arity: id.arity(),
                        bidirectional: id.bidirectional(),
                    })
                })
                .collect()
        })
        .as_ref()
        .map(Vec::as_slice)
        .map_err(Clone::clone)
}

const SOUNDNESS_TOL: f64 = 1e-12;

/// Largest phase distance between a witness segment and its rewrite.
pub fn rule_soundness_defect(id: RuleId) -> f64 {
    witnesses(id)
        .iter()
        .filter_map(|(w, dir)| {
            let c = Circuit::new(w.clone()).ok()?;
            let out = rewrite(c.gates(), id, *dir, 0)?;
            Some(Circuit::from_iter(out).matrix().phase_distance(&c.matrix()))
        })
        .fold(0.0, f64::max)
}

fn verify_rule(id: RuleId) -> Result<()> {
    let ws = witnesses(id);
    for (w, dir) in &ws {
        let c = Circuit::new(w.clone())?;
        let Some(out) = rewrite(c.gates(), id, *dir, 0) else {
            return Err(Error::UnsoundRule(format!("{id}: witness does not match")));
        };
        let defect = Circuit::from_iter(out).matrix().phase_distance(&c.matrix());
        if defect > SOUNDNESS_TOL {
            return Err(Error::UnsoundRule(format!("{id}: defect {defect:.3e}")));
        }
    }
    Ok(())
}

/// Sample left-hand sides covering every wire orientation of a rule.
fn witnesses(id: RuleId) -> Vec<(Vec<Gate>, Direction)> {
    use Direction::*;
    let (a, b) = (0.737, -1.91);
    let pi = std::f64::consts::PI;
    let mut out = Vec::new();
    for (c, t) in [(0u8, 1u8), (1, 0)] {
        let cn = Gate::cnot(c, t);
        let rev = Gate::cnot(t, c);
        let v = Gate::generic(t, crate::circuit::rotation(Axis::Y, 0.4) * crate::circuit::rotation(Axis::Z, 1.3))
            .expect("unitary");
        let sx = Gate::generic(t, crate::circuit::rotation(Axis::X, 0.9)).expect("unitary");
        let sz = Gate::generic(c, crate::circuit::rotation(Axis::Z, -0.6)).expect("unitary");
        let list: Vec<(Vec<Gate>, Direction)> = match id {
            RuleId::CancelCnot => vec![(vec![cn, cn], Forward)],
            RuleId::CancelSwap => vec![(vec![Gate::Swap, Gate::Swap], Forward)],
            RuleId::CnotPairToSwap => vec![(vec![cn, rev], Forward), (vec![rev, Gate::Swap], Backward)],
            RuleId::CommuteRxTarget => vec![(vec![Gate::rx(t, a), cn], Forward), (vec![cn, Gate::rx(t, b)], Backward)],
            RuleId::CommuteRzControl => vec![(vec![Gate::rz(c, a), cn], Forward), (vec![cn, Gate::rz(c, b)], Backward)],
            RuleId::CommuteSxTarget => vec![(vec![sx, cn], Forward), (vec![cn, sx], Backward)],
            RuleId::CommuteSzControl => vec![(vec![sz, cn], Forward), (vec![cn, sz], Backward)],
            RuleId::MoveSigmaX => vec![(vec![cn, Gate::rx(c, pi)], Forward), (vec![cn, Gate::rx(c, -pi)], Forward)],
            RuleId::MoveSigmaZ => vec![(vec![cn, Gate::rz(t, pi)], Forward), (vec![cn, Gate::rz(t, -pi)], Forward)],
            RuleId::MoveCnotViaSwap => vec![(vec![Gate::Swap, cn], Forward), (vec![cn, Gate::Swap], Backward)],
            RuleId::Move1qViaSwap => vec![(vec![Gate::Swap, v], Forward), (vec![v, Gate::Swap], Backward)],
            RuleId::MergeRotations => Axis::ALL.iter().map(|&n| (vec![Gate::rot(n, t, a), Gate::rot(n, t, b)], Forward)).collect(),
            RuleId::AxisChange => {
                let mut v = Vec::new();
                for n in Axis::ALL {
                    for m in Axis::ALL {
                        if n != m {
                            v.push((vec![Gate::rot(m, t, a), Gate::s(n, t)], Forward));
                            v.push((vec![Gate::s(n, t), Gate::rot(m, t, b)], Backward));
                        }
                    }
                }
                v
            }
            RuleId::FlipCnotPair => vec![
                (vec![cn, Gate::rx(c, a), Gate::rz(t, b), cn], Forward),
                (vec![cn, Gate::rz(t, b), Gate::rx(c, a), cn], Backward),
                (vec![cn, Gate::rx(c, a), cn], Forward),
                (vec![cn, Gate::rz(t, b), cn], Forward),
            ],
        };
        out.extend(list);
    }
    out
}

/// Applies one rule at `pos` in the forward direction.
pub fn apply_rule(c: &Circuit, rule: RuleId, pos: usize) -> Result<Circuit> {
    apply_rule_dir(c, rule, Direction::Forward, pos)
}

pub fn apply_rule_dir(c: &Circuit, rule: RuleId, dir: Direction, pos: usize) -> Result<Circuit> {
    registry()?;
    rewrite(c.gates(), rule, dir, pos)
        .map(Circuit::from_iter)
        .ok_or_else(|| Error::NoMatch {
            rule: rule.name().to_string(),
            pos,
        })
}

fn partner(gates: &[Gate], i: usize) -> Option<usize> {
    let w = gates[i].wires();
    (i + 1..gates.len()).find(|&j| gates[j].wires() & w != 0)
}

fn splice(gates: &[Gate], i: usize, j: usize, replacement: Vec<Gate>) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len() + 1);
    out.extend_from_slice(&gates[..i]);
    out.extend_from_slice(&gates[i + 1..j]);
    out.extend(replacement);
    out.extend_from_slice(&gates[j + 1..]);
    out
}

fn commutes(m: &Mat2, p: &Mat2) -> bool {
    (*m * *p - *p * *m).norm() <= 1e-12
}

fn is_pi(angle: f64) -> bool {
    (angle.abs() - std::f64::consts::PI).abs() <= 1e-12
}

fn is_half_pi(angle: f64) -> bool {
    (angle - std::f64::consts::FRAC_PI_2).abs() <= 1e-12
}

/// Core matcher; `None` when the rule does not apply.
pub(crate) fn rewrite(gates: &[Gate], rule: RuleId, dir: Direction, pos: usize) -> Option<Vec<Gate>> {
    if pos >= gates.len() {
        return None;
    }
    if rule == RuleId::FlipCnotPair {
        return flip_pair(gates, pos);
    }
    let j = partner(gates, pos)?;
    let (g, h) = (gates[pos], gates[j]);
    let rep = pair_rewrite(rule, dir, g, h)?;
    Some(splice(gates, pos, j, rep))
}

fn pair_rewrite(rule: RuleId, dir: Direction, g: Gate, h: Gate) -> Option<Vec<Gate>> {
    use Direction::*;
    use Gate::*;
    match (rule, dir) {
        (RuleId::CancelCnot, Forward) => match (g, h) {
            (Cnot { control: a, .. }, Cnot { control: b, .. }) if a == b => Some(vec![]),
            _ => None,
        },
        (RuleId::CancelSwap, Forward) => matches!((g, h), (Swap, Swap)).then(Vec::new),
        (RuleId::CnotPairToSwap, Forward) => match (g, h) {
            (Cnot { control: a, target: b }, Cnot { control: b2, .. }) if b2 == b => {
                Some(vec![Gate::cnot(b, a), Swap])
            }
            _ => None,
        },
        (RuleId::CnotPairToSwap, Backward) => match (g, h) {
            (Cnot { control: b, target: a }, Swap) => Some(vec![Gate::cnot(a, b), Gate::cnot(b, a)]),
            _ => None,
        },
        (RuleId::CommuteRxTarget | RuleId::CommuteRzControl | RuleId::CommuteSxTarget | RuleId::CommuteSzControl, _) => {
            let (one, cn) = if dir == Forward { (g, h) } else { (h, g) };
            let Cnot { control, target } = cn else { return None };
            let ok = match (rule, one) {
                (RuleId::CommuteRxTarget, Rotation { axis: Axis::X, qubit, .. }) => qubit == target,
                (RuleId::CommuteRzControl, Rotation { axis: Axis::Z, qubit, .. }) => qubit == control,
                (RuleId::CommuteSxTarget, Generic1Q { qubit, matrix }) => qubit == target && commutes(&matrix, &sigma_x()),
                (RuleId::CommuteSzControl, Generic1Q { qubit, matrix }) => qubit == control && commutes(&matrix, &sigma_z()),
                _ => false,
            };
            ok.then(|| vec![h, g])
        }
        (RuleId::MoveSigmaX, Forward) => match (g, h) {
            (Cnot { control, target }, Rotation { axis: Axis::X, qubit, angle }) if qubit == control && is_pi(angle) => {
                Some(vec![Gate::rx(control, angle), Gate::rx(target, angle), g])
            }
            _ => None,
        },
        (RuleId::MoveSigmaZ, Forward) => match (g, h) {
            (Cnot { control, target }, Rotation { axis: Axis::Z, qubit, angle }) if qubit == target && is_pi(angle) => {
                Some(vec![Gate::rz(control, angle), Gate::rz(target, angle), g])
            }
            _ => None,
        },
        (RuleId::MoveCnotViaSwap, Forward) => match (g, h) {
            (Swap, Cnot { control, target }) => Some(vec![Gate::cnot(target, control), Swap]),
            _ => None,
        },
        (RuleId::MoveCnotViaSwap, Backward) => match (g, h) {
            (Cnot { control, target }, Swap) => Some(vec![Swap, Gate::cnot(target, control)]),
            _ => None,
        },
        (RuleId::Move1qViaSwap, Forward) => match (g, h) {
            (Swap, v) if v.one_qubit().is_some() => Some(vec![v.mirrored(), Swap]),
            _ => None,
        },
        (RuleId::Move1qViaSwap, Backward) => match (g, h) {
            (v, Swap) if v.one_qubit().is_some() => Some(vec![Swap, v.mirrored()]),
            _ => None,
        },
        (RuleId::MergeRotations, Forward) => match (g, h) {
            (Rotation { axis, qubit, angle: a }, Rotation { axis: n, qubit: q, angle: b }) if axis == n && qubit == q => {
                Some(vec![Gate::rot(axis, qubit, a + b)])
            }
            _ => None,
        },
        (RuleId::AxisChange, Forward) => match (g, h) {
            (Rotation { axis: m, qubit, angle }, Rotation { axis: n, qubit: q, angle: s }) if q == qubit && is_half_pi(s) => {
                let (p, sign) = n.cross(m)?;
                Some(vec![h, Gate::rot(p, qubit, sign * angle)])
            }
            _ => None,
        },
        (RuleId::AxisChange, Backward) => match (g, h) {
            (Rotation { axis: n, qubit, angle: s }, Rotation { axis: p, qubit: q, angle }) if q == qubit && is_half_pi(s) => {
                let (m, sign) = Axis::ALL
                    .iter()
                    .find_map(|&m| n.cross(m).filter(|(r, _)| *r == p).map(|(_, sign)| (m, sign)))?;
                Some(vec![Gate::rot(m, qubit, sign * angle), g])
            }
            _ => None,
        },
        _ => None,
    }
}

/// `[C(c,t), Rx(α)@c?, Rz(β)@t?, C(c,t)] → [C(t,c), Rz(β)@c?, Rx(α)@t?, C(t,c)]`,
/// matched on consecutive gates with at least one middle rotation.
fn flip_pair(gates: &[Gate], pos: usize) -> Option<Vec<Gate>> {
    let Gate::Cnot { control, target } = gates[pos] else { return None };
    let mut rx = None;
    let mut rz = None;
    let mut k = pos + 1;
    while k < gates.len() && k <= pos + 2 {
        match gates[k] {
            Gate::Rotation { axis: Axis::X, qubit, angle } if qubit == control && rx.is_none() => rx = Some(angle),
            Gate::Rotation { axis: Axis::Z, qubit, angle } if qubit == target && rz.is_none() => rz = Some(angle),
            _ => break,
        }
        k += 1;
    }
    if k == pos + 1 || k >= gates.len() || gates[k] != gates[pos] {
        return None;
    }
    let mut rep = vec![Gate::cnot(target, control)];
    if let Some(b) = rz {
        rep.push(Gate::rz(control, b));
    }
    if let Some(a) = rx {
        rep.push(Gate::rx(target, a));
    }
    rep.push(Gate::cnot(target, control));
    let mut out = gates[..pos].to_vec();
    out.extend(rep);
    out.extend_from_slice(&gates[k + 1..]);
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleId,
    pub direction: Direction,
    pub pos: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
    pub initial_len: usize,
    pub final_len: usize,
}

impl ReductionTrace {
    /// Re-applies the recorded steps to `c`.
    pub fn replay(&self, c: &Circuit) -> Result<Circuit> {
        self.steps
            .iter()
            .try_fold(c.clone(), |acc, s| apply_rule_dir(&acc, s.rule, s.direction, s.pos))
    }
}

const SHRINKING: [RuleId; 3] = [RuleId::CancelCnot, RuleId::CancelSwap, RuleId::MergeRotations];
const SWAP_PUSHING: [RuleId; 3] = [RuleId::CnotPairToSwap, RuleId::MoveCnotViaSwap, RuleId::Move1qViaSwap];
const COMMUTING: [RuleId; 4] = [
    RuleId::CommuteRxTarget,
    RuleId::CommuteRzControl,
    RuleId::CommuteSxTarget,
    RuleId::CommuteSzControl,
];

fn first_match(gates: &[Gate], rules: &[RuleId]) -> Option<(Step, Vec<Gate>)> {
    for &rule in rules {
        for pos in 0..gates.len() {
            if let Some(out) = rewrite(gates, rule, Direction::Forward, pos) {
                let step = Step {
                    rule,
                    direction: Direction::Forward,
                    pos,
                };
                return Some((step, out));
            }
        }
    }
    None
}

/// Moves the one-qubit gate at `pos` rightwards through CNOTs it commutes
/// with, stopping as soon as a shrinking rule applies somewhere.
fn productive_commute(gates: &[Gate], pos: usize) -> Option<(Vec<Step>, Vec<Gate>)> {
    let mut cur = gates.to_vec();
    let mut at = pos;
    let mut steps = Vec::new();
    loop {
        let (rule, next) = COMMUTING
            .iter()
            .find_map(|&r| rewrite(&cur, r, Direction::Forward, at).map(|out| (r, out)))?;
        let moved_to = partner(&cur, at).expect("commute matched a partner");
        steps.push(Step {
            rule,
            direction: Direction::Forward,
            pos: at,
        });
        cur = next;
        at = moved_to;
        if first_match(&cur, &SHRINKING).is_some() {
            return Some((steps, cur));
        }
    }
}

/// Greedy rewriting to a fixed point.
///
/// Priority: cancellations and merges, then SWAP pushing (which moves SWAPs
/// to the end), then commutations that enable a cancellation or merge.
/// Every round lowers `(gate count, sum of CNOT positions, −sum of SWAP
/// positions)` lexicographically, so the loop terminates.
pub fn reduce(c: &Circuit) -> (Circuit, ReductionTrace) {
    let mut gates = c.gates().to_vec();
    let mut trace = ReductionTrace {
        initial_len: gates.len(),
        ..Default::default()
    };
    'outer: loop {
        if let Some((step, out)) = first_match(&gates, &SHRINKING).or_else(|| first_match(&gates, &SWAP_PUSHING)) {
            trace.steps.push(step);
            gates = out;
            continue;
        }
        for pos in 0..gates.len() {
            if gates[pos].one_qubit().is_none() {
                continue;
            }
            if let Some((steps, out)) = productive_commute(&gates, pos) {
                trace.steps.extend(steps);
                gates = out;
                continue 'outer;
            }
        }
        break;
    }
    trace.final_len = gates.len();
    (Circuit::from_iter(gates), trace)
}
