use std::collections::{HashSet, VecDeque};

use super::{rewrite, Direction, RuleId};
use crate::circuit::{Axis, Circuit, Gate};
use crate::{Error, Result};

/// Enough for every topology with at most four CNOTs.
pub const DEFAULT_DEPTH: usize = 8;

const MOVES: [(RuleId, Direction); 5] = [
    (RuleId::CommuteRxTarget, Direction::Forward),
    (RuleId::CommuteRxTarget, Direction::Backward),
    (RuleId::CommuteRzControl, Direction::Forward),
    (RuleId::CommuteRzControl, Direction::Backward),
    (RuleId::FlipCnotPair, Direction::Forward),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    /// `true` if no reachable circuit has two adjacent CNOTs.
    pub separated: bool,
    pub depth_limit: usize,
    /// Distinct circuits visited.
    pub explored: usize,
    /// Rewrites leading to adjacent CNOTs, when found.
    pub witness: Option<Path>,
}

/// Whether no sequence of at most `depth_limit` commutations of `Rx`
/// (past a target) and `Rz` (past a control) and CNOT-pair flips brings two
/// CNOTs next to each other.
pub fn effectively_separated(c: &Circuit, depth_limit: usize) -> Result<bool> {
    Ok(separation_report(c, depth_limit)?.separated)
}

pub fn separation_report(c: &Circuit, depth_limit: usize) -> Result<SeparationReport> {
    if depth_limit == 0 {
        return Err(Error::InvalidArgument("depth limit must be at least 1".into()));
    }
    super::registry()?;
    for (pos, g) in c.gates().iter().enumerate() {
        let ok = matches!(
            g,
            Gate::Cnot { .. }
                | Gate::Rotation {
                    axis: Axis::X | Axis::Z,
                    ..
                }
        );
        if !ok {
            return Err(Error::UnsupportedGate { gate: g.to_string(), pos });
        }
    }

    let start = canonical(c.gates());
    let mut seen: HashSet<Vec<Key>> = HashSet::new();
    seen.insert(key(&start));
    let mut queue: VecDeque<(Vec<Gate>, Path)> = VecDeque::new();
    queue.push_back((start, Vec::new()));
    while let Some((gates, path)) = queue.pop_front() {
        if has_adjacent_cnots(&gates) {
            return Ok(SeparationReport {
                separated: false,
                depth_limit,
                explored: seen.len(),
                witness: Some(path),
            });
        }
        if path.len() == depth_limit {
            continue;
        }
        for pos in 0..gates.len() {
            for (rule, dir) in MOVES {
                let Some(next) = rewrite(&gates, rule, dir, pos) else { continue };
                let next = canonical(&next);
                if seen.insert(key(&next)) {
                    let mut p = path.clone();
                    p.push((rule, dir, pos));
                    queue.push_back((next, p));
                }
            }
        }
    }
    Ok(SeparationReport {
        separated: true,
        depth_limit,
        explored: seen.len(),
        witness: None,
    })
}

fn has_adjacent_cnots(gates: &[Gate]) -> bool {
    gates
        .windows(2)
        .any(|w| matches!(w, [Gate::Cnot { .. }, Gate::Cnot { .. }]))
}

/// Sorts every run of one-qubit gates by wire; gates on different wires
/// commute, so this only picks a representative.
fn canonical(gates: &[Gate]) -> Vec<Gate> {
    let mut out = gates.to_vec();
    let mut start = 0;
    while start < out.len() {
        let mut end = start;
        while end < out.len() && !out[end].is_two_qubit() {
            end += 1;
        }
        out[start..end].sort_by_key(|g| g.wires());
        start = end + 1;
    }
    out
}

type Key = (u8, u8, u64);
type Path = Vec<(RuleId, Direction, usize)>;

fn key(gates: &[Gate]) -> Vec<Key> {
    gates
        .iter()
        .map(|g| match *g {
            Gate::Cnot { control, target } => (0, control * 2 + target, 0),
            Gate::Rotation { axis, qubit, angle } => (1 + axis as u8, qubit, angle.to_bits()),
            _ => unreachable!("checked above"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(g: Vec<Gate>) -> Circuit {
        Circuit::new(g).unwrap()
    }

    #[test]
    fn opposite_orientation_with_rx_is_not_separated() {
        let r = separation_report(&c(vec![Gate::cnot(0, 1), Gate::rx(0, 0.4), Gate::cnot(1, 0)]), 8).unwrap();
        assert!(!r.separated);
        assert_eq!(r.witness.unwrap().len(), 1);
    }

    #[test]
    fn same_orientation_with_rx_on_control_is_separated() {
        assert!(effectively_separated(&c(vec![Gate::cnot(1, 0), Gate::rx(1, 0.4), Gate::cnot(1, 0)]), 8).unwrap());
    }

    #[test]
    fn four_cnots_three_rotations_collapse() {
        let g = vec![
            Gate::cnot(1, 0),
            Gate::rx(1, 0.1),
            Gate::cnot(1, 0),
            Gate::rx(1, 0.2),
            Gate::cnot(1, 0),
            Gate::rx(1, 0.3),
            Gate::cnot(1, 0),
        ];
        assert!(!effectively_separated(&c(g), 8).unwrap());
    }

    #[test]
    fn monotone_in_depth() {
        let g = c(vec![Gate::cnot(0, 1), Gate::rz(1, 0.3), Gate::rx(0, 0.2), Gate::cnot(0, 1), Gate::rx(1, 0.5), Gate::cnot(1, 0)]);
        let mut was_false = false;
        for d in 1..=8 {
            let s = effectively_separated(&g, d).unwrap();
            assert!(!(was_false && s));
            was_false |= !s;
        }
    }

    #[test]
    fn rejects_other_gates() {
        let err = effectively_separated(&c(vec![Gate::cnot(0, 1), Gate::ry(0, 0.1)]), 8).unwrap_err();
        assert!(matches!(err, Error::UnsupportedGate { pos: 1, .. }));
        assert!(effectively_separated(&c(vec![]), 0).is_err());
    }
}
