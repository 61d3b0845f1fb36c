//! Player attractors over a live view, plus the trap predicate.
//!
//! `attract(view, player, targets)` is the least fixpoint of the usual
//! induction: a vertex joins when it is owned by the player and has some
//! live successor already inside, or is owned by the opponent and has all
//! live successors inside. Computed backwards with a FIFO worklist and
//! per-vertex out-degree counters, linear in the live part of the graph.

use thiserror::Error;

use crate::game::{GameView, Owner, VertexId};
use crate::set::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AttractorError {
    #[error("attractor target {0} is not live")]
    TargetNotLive(VertexId),
}

/// An attractor set with its forcing strategy and BFS layering.
pub struct AttractorResult {
    pub set: VertexSet,
    /// For attracted vertices owned by the attracting player (targets
    /// excluded): the successor that steps one wave closer to the targets.
    pub strategy: Vec<Option<VertexId>>,
    /// Wave `k` at which each member entered; targets are wave 0.
    pub waves: Vec<Option<u32>>,
}

impl AttractorResult {
    fn empty(universe: usize) -> Self {
        AttractorResult {
            set: VertexSet::empty(universe),
            strategy: vec![None; universe],
            waves: vec![None; universe],
        }
    }
}

/// Vertices from which `player` can force the token into `targets`.
///
/// The view is not mutated; opponent out-degree counters are snapshotted per
/// call. Worklist order is FIFO over ascending target ids, so the result
/// (including waves and strategy) is deterministic.
pub fn attract(
    view: &GameView<'_>,
    player: Owner,
    targets: &VertexSet,
) -> Result<AttractorResult, AttractorError> {
    if let Some(v) = targets.iter().find(|&v| !view.is_live(v)) {
        return Err(AttractorError::TargetNotLive(v));
    }
    let mut result = AttractorResult::empty(view.universe());
    if targets.is_empty() {
        return Ok(result);
    }

    let mut counters: Vec<u32> = (0..view.universe() as VertexId)
        .map(|v| if view.is_live(v) { view.live_out_degree(v) } else { 0 })
        .collect();
    let mut queue: std::collections::VecDeque<VertexId> = std::collections::VecDeque::new();
    for v in targets.iter() {
        result.set.insert(v);
        result.waves[v as usize] = Some(0);
        queue.push_back(v);
    }

    while let Some(u) = queue.pop_front() {
        let next_wave = result.waves[u as usize].unwrap() + 1;
        for w in view.live_predecessors(u) {
            if result.set.contains(w) {
                continue;
            }
            if view.game().owner_of(w) == player {
                result.set.insert(w);
                result.strategy[w as usize] = Some(u);
                result.waves[w as usize] = Some(next_wave);
                queue.push_back(w);
            } else {
                counters[w as usize] -= 1;
                if counters[w as usize] == 0 {
                    result.set.insert(w);
                    result.waves[w as usize] = Some(next_wave);
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(result)
}

/// True when `player` cannot leave `w`: every live vertex of `w` owned by
/// `player` has all its live successors in `w`, and every vertex owned by
/// the opponent keeps at least one live successor in `w`.
pub fn is_trap(view: &GameView<'_>, player: Owner, w: &VertexSet) -> bool {
    assert!(w.is_subset_of(view.live_set()), "trap check expects live vertices");
    w.iter().all(|v| {
        if view.game().owner_of(v) == player {
            view.live_successors(v).all(|s| w.contains(s))
        } else {
            view.live_successors(v).any(|s| w.contains(s))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig_game, g4, two_cycle};
    use crate::game::GameView;

    #[test]
    fn attract_fixture_to_self_loop_vertex() {
        let g = fig_game();
        let view = GameView::full(&g);
        let res = attract(&view, Owner::Odd, &VertexSet::from_ids(4, &[3])).unwrap();
        assert_eq!(res.set.ids(), vec![0, 1, 2, 3]);
        // 2 is Even-owned with single edge to 3: forced at wave 1.
        assert_eq!(res.waves[2], Some(1));
        assert_eq!(res.strategy[2], None);
        // 1 is Odd-owned; attracted via its edge to 2.
        assert_eq!(res.strategy[1], Some(2));
    }

    #[test]
    fn attract_empty_targets() {
        let g = fig_game();
        let view = GameView::full(&g);
        let res = attract(&view, Owner::Even, &VertexSet::empty(4)).unwrap();
        assert!(res.set.is_empty());
    }

    #[test]
    fn attract_two_cycle_single_step() {
        let g = two_cycle();
        let view = GameView::full(&g);
        let res = attract(&view, Owner::Even, &VertexSet::from_ids(2, &[0])).unwrap();
        assert_eq!(res.set.ids(), vec![0, 1]);
        // 1 is Odd-owned with its only edge into the set: no strategy entry.
        assert_eq!(res.strategy[1], None);
        assert_eq!(res.strategy[0], None);
        assert_eq!(res.waves[1], Some(1));
    }

    #[test]
    fn attract_rejects_dead_target() {
        let g = g4();
        let view = GameView::full(&g);
        let sub = view.restrict(&VertexSet::from_ids(4, &[0, 1])).unwrap();
        let err = attract(&sub, Owner::Even, &VertexSet::from_ids(4, &[0])).unwrap_err();
        assert_eq!(err, AttractorError::TargetNotLive(0));
    }

    #[test]
    fn self_loop_keeps_opponent_unattracted() {
        // Odd-owned vertex 1 loops on itself; Even cannot drag it to 0.
        let g = crate::game::ParityGame::build(vec![
            crate::game::VertexSpec::new(0, Owner::Even, vec![1]),
            crate::game::VertexSpec::new(1, Owner::Odd, vec![0, 1]),
        ])
        .unwrap();
        let view = GameView::full(&g);
        let res = attract(&view, Owner::Even, &VertexSet::from_ids(2, &[0])).unwrap();
        assert_eq!(res.set.ids(), vec![0]);
    }

    #[test]
    fn trap_predicate_on_fixture() {
        let g = g4();
        let view = GameView::full(&g);
        // Vacuous trap.
        assert!(is_trap(&view, Owner::Even, &VertexSet::empty(4)));
        // {0, 1}: Even's vertex 0 has successor 3 outside.
        assert!(!is_trap(&view, Owner::Even, &VertexSet::from_ids(4, &[0, 1])));
        // {2, 3} keeps both players inside: 2 -> 3, 3 -> 2 only.
        assert!(is_trap(&view, Owner::Even, &VertexSet::from_ids(4, &[2, 3])));
        assert!(is_trap(&view, Owner::Odd, &VertexSet::from_ids(4, &[2, 3])));
    }

    #[test]
    fn attractor_complement_is_trap() {
        let g = g4();
        let view = GameView::full(&g);
        for player in [Owner::Even, Owner::Odd] {
            for targets in [vec![0], vec![2], vec![1, 3]] {
                let res = attract(&view, player, &VertexSet::from_ids(4, &targets)).unwrap();
                let complement = view.live_set().difference(&res.set);
                assert!(is_trap(&view, player, &complement));
            }
        }
    }

    #[test]
    fn strategy_waves_decrease() {
        let g = fig_game();
        let view = GameView::full(&g);
        let res = attract(&view, Owner::Odd, &VertexSet::from_ids(4, &[3])).unwrap();
        for v in res.set.iter() {
            if let Some(s) = res.strategy[v as usize] {
                assert!(res.waves[s as usize].unwrap() < res.waves[v as usize].unwrap());
            }
        }
    }
}
