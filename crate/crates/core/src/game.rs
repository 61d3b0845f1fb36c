//! Parity game data model: immutable games, live-vertex views, winner partitions.
//!
//! A game is a finite directed graph where every vertex carries a priority
//! and an owner and has at least one outgoing edge. Solvers never mutate a
//! game; they work on a [`GameView`], a live-vertex mask that supports
//! removing attractor sets and (for the self-loop pre-pass only) deleting
//! individual self-loop edges. Winner sets are always reported in the ids
//! of the game the view was opened on.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::VertexSet;

pub type VertexId = u32;
pub type Priority = u32;

/// The player choosing the outgoing edge at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    Even,
    Odd,
}

impl Owner {
    pub fn opponent(self) -> Owner {
        match self {
            Owner::Even => Owner::Odd,
            Owner::Odd => Owner::Even,
        }
    }

    /// The player whose parity matches the priority.
    pub fn of_priority(p: Priority) -> Owner {
        if p % 2 == 0 {
            Owner::Even
        } else {
            Owner::Odd
        }
    }

    /// True when looping on a vertex of priority `p` forever is a win for `self`.
    pub fn likes(self, p: Priority) -> bool {
        Owner::of_priority(p) == self
    }
}

impl std::fmt::Display for Owner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Owner::Even => write!(f, "even"),
            Owner::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("game has no vertices")]
    EmptyGame,
    #[error("vertex {0} has no outgoing edge")]
    DeadEnd(VertexId),
    #[error("vertex {vertex} lists successor {successor} outside 0..{bound}")]
    BadId { vertex: VertexId, successor: VertexId, bound: usize },
    #[error("removing the set strands vertex {0} without live successors")]
    DeadEndCreated(VertexId),
}

/// Input description of one vertex for [`ParityGame::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSpec {
    pub priority: Priority,
    pub owner: Owner,
    pub successors: Vec<VertexId>,
    pub name: Option<String>,
}

impl VertexSpec {
    pub fn new(priority: Priority, owner: Owner, successors: Vec<VertexId>) -> Self {
        VertexSpec { priority, owner, successors, name: None }
    }

    pub fn named(priority: Priority, owner: Owner, successors: Vec<VertexId>, name: &str) -> Self {
        VertexSpec { priority, owner, successors, name: Some(name.to_string()) }
    }
}

/// An immutable parity game with dense vertex ids `0..n`.
///
/// Both adjacency directions are stored; attractor computation walks edges
/// backwards. Duplicate edges in the input are dropped (first occurrence
/// kept). Self-loops are legal here; the solver eliminates them in a
/// pre-pass before peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityGame {
    priority: Vec<Priority>,
    owner: Vec<Owner>,
    successors: Vec<Vec<VertexId>>,
    predecessors: Vec<Vec<VertexId>>,
    names: Vec<Option<String>>,
    edge_count: usize,
}

impl ParityGame {
    /// Validates and assembles a game, computing predecessor lists.
    pub fn build(specs: Vec<VertexSpec>) -> Result<ParityGame, GameError> {
        if specs.is_empty() {
            return Err(GameError::EmptyGame);
        }
        let n = specs.len();
        let mut priority = Vec::with_capacity(n);
        let mut owner = Vec::with_capacity(n);
        let mut successors = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        let mut edge_count = 0;
        for (v, spec) in specs.into_iter().enumerate() {
            let v = v as VertexId;
            let mut succ: Vec<VertexId> = Vec::with_capacity(spec.successors.len());
            let mut seen = VertexSet::empty(n);
            for s in spec.successors {
                if s as usize >= n {
                    return Err(GameError::BadId { vertex: v, successor: s, bound: n });
                }
                if !seen.contains(s) {
                    seen.insert(s);
                    succ.push(s);
                }
            }
            if succ.is_empty() {
                return Err(GameError::DeadEnd(v));
            }
            edge_count += succ.len();
            priority.push(spec.priority);
            owner.push(spec.owner);
            successors.push(succ);
            names.push(spec.name);
        }
        let mut predecessors = vec![Vec::new(); n];
        for u in 0..n {
            for &v in &successors[u] {
                predecessors[v as usize].push(u as VertexId);
            }
        }
        Ok(ParityGame { priority, owner, successors, predecessors, names, edge_count })
    }

    pub fn vertex_count(&self) -> usize {
        self.priority.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as VertexId).into_iter()
    }

    pub fn priority_of(&self, v: VertexId) -> Priority {
        self.priority[v as usize]
    }

    pub fn owner_of(&self, v: VertexId) -> Owner {
        self.owner[v as usize]
    }

    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.successors[v as usize]
    }

    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.predecessors[v as usize]
    }

    pub fn name_of(&self, v: VertexId) -> Option<&str> {
        self.names[v as usize].as_deref()
    }

    pub fn has_self_loop(&self, v: VertexId) -> bool {
        self.successors[v as usize].contains(&v)
    }

    pub fn max_priority(&self) -> Priority {
        *self.priority.iter().max().expect("games are non-empty")
    }
}

/// A live-vertex mask over a [`ParityGame`]: the current subgame while peeling.
///
/// Restriction never touches the base game. The only structural edit a view
/// supports is deleting a self-loop edge, which the self-loop pre-pass uses;
/// regular solving only ever removes whole vertex sets whose complement
/// stays left-total (attractor complements are traps).
#[derive(Clone)]
pub struct GameView<'a> {
    game: &'a ParityGame,
    live: VertexSet,
    live_out_degree: Vec<u32>,
    deleted_loops: VertexSet,
    live_count: usize,
}

impl<'a> GameView<'a> {
    pub fn full(game: &'a ParityGame) -> GameView<'a> {
        let n = game.vertex_count();
        let live_out_degree = game.vertices().map(|v| game.successors(v).len() as u32).collect();
        GameView {
            game,
            live: VertexSet::full(n),
            live_out_degree,
            deleted_loops: VertexSet::empty(n),
            live_count: n,
        }
    }

    pub fn game(&self) -> &'a ParityGame {
        self.game
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.live.contains(v)
    }

    pub fn live_set(&self) -> &VertexSet {
        &self.live
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn is_empty(&self) -> bool {
        self.live_count == 0
    }

    pub fn universe(&self) -> usize {
        self.game.vertex_count()
    }

    pub fn live_out_degree(&self, v: VertexId) -> u32 {
        self.live_out_degree[v as usize]
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.live.iter()
    }

    /// Successors of `v` inside the live mask, minus a deleted self-loop.
    pub fn live_successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let skip_loop = self.deleted_loops.contains(v);
        self.game
            .successors(v)
            .iter()
            .copied()
            .filter(move |&s| self.live.contains(s) && !(skip_loop && s == v))
    }

    /// Predecessors of `v` inside the live mask, minus a deleted self-loop.
    pub fn live_predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let skip_loop = self.deleted_loops.contains(v);
        self.game
            .predecessors(v)
            .iter()
            .copied()
            .filter(move |&p| self.live.contains(p) && !(skip_loop && p == v))
    }

    /// True when `v` is live and still carries an effective self-loop.
    pub fn has_live_self_loop(&self, v: VertexId) -> bool {
        self.is_live(v) && self.game.has_self_loop(v) && !self.deleted_loops.contains(v)
    }

    /// Deletes the self-loop edge of `v`. Returns the remaining live out-degree.
    ///
    /// Only the self-loop pre-pass calls this; it handles the zero case by
    /// removing the vertex through the forced-loop rule.
    pub fn delete_self_loop(&mut self, v: VertexId) -> u32 {
        assert!(self.has_live_self_loop(v), "no live self-loop at vertex {v}");
        self.deleted_loops.insert(v);
        self.live_out_degree[v as usize] -= 1;
        self.live_out_degree[v as usize]
    }

    /// Removes `removed` in place. Fails with `DeadEndCreated` if a surviving
    /// vertex loses its last live successor, which signals a caller bug: the
    /// solver only removes sets whose complement is a trap.
    pub fn remove_set(&mut self, removed: &VertexSet) -> Result<(), GameError> {
        assert!(
            removed.is_subset_of(&self.live),
            "removed set must consist of live vertices"
        );
        self.live.difference_with(removed);
        self.live_count -= removed.len();
        for v in removed.iter() {
            for p in self.game.predecessors(v).iter().copied() {
                if self.live.contains(p) && !(p == v && self.deleted_loops.contains(v)) {
                    // p == v cannot be live here; the deleted-loop guard is for
                    // symmetry with live_predecessors.
                    self.live_out_degree[p as usize] -= 1;
                }
            }
        }
        for v in self.live.iter() {
            if self.live_out_degree[v as usize] == 0 {
                return Err(GameError::DeadEndCreated(v));
            }
        }
        Ok(())
    }

    /// The subgame without `removed`, leaving `self` untouched.
    pub fn restrict(&self, removed: &VertexSet) -> Result<GameView<'a>, GameError> {
        let mut view = self.clone();
        view.remove_set(removed)?;
        Ok(view)
    }

    /// The subgame induced on `kept` (= restrict to the complement).
    pub fn restricted_to(&self, kept: &VertexSet) -> Result<GameView<'a>, GameError> {
        let removed = self.live.difference(kept);
        self.restrict(&removed)
    }

    /// Maximum priority among live vertices; absent on the empty view.
    pub fn max_priority(&self) -> Option<Priority> {
        self.live_vertices().map(|v| self.game.priority_of(v)).max()
    }

    /// Maximum live priority of `player`'s parity; absent when no live vertex
    /// has that parity.
    pub fn max_priority_of(&self, player: Owner) -> Option<Priority> {
        self.live_vertices()
            .map(|v| self.game.priority_of(v))
            .filter(|&p| player.likes(p))
            .max()
    }

    /// True when no live vertex retains an effective self-loop.
    pub fn is_self_loop_free(&self) -> bool {
        self.live_vertices().all(|v| !self.has_live_self_loop(v))
    }

    /// Extracts the live subgame as a standalone game with dense ids.
    ///
    /// Returns the game and the map from new ids to ids of the base game.
    /// Requires a non-empty view (games cannot be empty).
    pub fn extract_subgame(&self) -> Result<(ParityGame, Vec<VertexId>), GameError> {
        let kept: Vec<VertexId> = self.live.ids();
        let mut to_new = vec![0 as VertexId; self.universe()];
        for (new, &old) in kept.iter().enumerate() {
            to_new[old as usize] = new as VertexId;
        }
        let specs = kept
            .iter()
            .map(|&old| VertexSpec {
                priority: self.game.priority_of(old),
                owner: self.game.owner_of(old),
                successors: self.live_successors(old).map(|s| to_new[s as usize]).collect(),
                name: self.game.name_of(old).map(str::to_string),
            })
            .collect();
        Ok((ParityGame::build(specs)?, kept))
    }
}

/// The disjoint cover of a game's vertices by winner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinnerPartition {
    pub even: VertexSet,
    pub odd: VertexSet,
}

impl WinnerPartition {
    pub fn empty(universe: usize) -> Self {
        WinnerPartition { even: VertexSet::empty(universe), odd: VertexSet::empty(universe) }
    }

    pub fn set_of(&self, player: Owner) -> &VertexSet {
        match player {
            Owner::Even => &self.even,
            Owner::Odd => &self.odd,
        }
    }

    pub fn set_of_mut(&mut self, player: Owner) -> &mut VertexSet {
        match player {
            Owner::Even => &mut self.even,
            Owner::Odd => &mut self.odd,
        }
    }

    pub fn winner_of(&self, v: VertexId) -> Option<Owner> {
        if self.even.contains(v) {
            Some(Owner::Even)
        } else if self.odd.contains(v) {
            Some(Owner::Odd)
        } else {
            None
        }
    }

    pub fn absorb(&mut self, other: &WinnerPartition) {
        self.even.union_with(&other.even);
        self.odd.union_with(&other.odd);
    }

    /// True when the two sets disjointly cover the whole universe.
    pub fn is_total_partition(&self) -> bool {
        self.even.is_disjoint_from(&self.odd)
            && self.even.len() + self.odd.len() == self.even.universe()
    }

    /// Vertices assigned differently by the two partitions.
    pub fn disagreement(&self, other: &WinnerPartition) -> VertexSet {
        let mut diff = VertexSet::empty(self.even.universe());
        for v in self.even.iter() {
            if !other.even.contains(v) {
                diff.insert(v);
            }
        }
        for v in self.odd.iter() {
            if !other.odd.contains(v) {
                diff.insert(v);
            }
        }
        diff
    }
}

/// Result of the self-loop elimination pre-pass.
pub struct SelfLoopFree {
    /// The self-loop-free residual, absent when preprocessing resolved
    /// every vertex.
    pub residual: Option<ParityGame>,
    /// Map from residual ids to ids of the input game.
    pub residual_to_original: Vec<VertexId>,
    /// Winners decided during preprocessing, in input-game ids.
    pub assigned: WinnerPartition,
}

/// Removes all self-loops, deciding winners where the loop forces them.
///
/// A self-loop whose priority parity matches the owner lets the owner win by
/// staying put, so the owner's attractor to that vertex is assigned and cut
/// out. A mismatched loop is useless to its owner and the edge is deleted;
/// if that leaves the vertex without moves, the owner is forced to loop and
/// loses, so the opponent's attractor to the vertex is assigned and cut out.
/// Repeats until the live residual is self-loop-free.
pub fn remove_self_loops(game: &ParityGame) -> SelfLoopFree {
    let mut view = GameView::full(game);
    let assigned = remove_self_loops_in_view(&mut view, &mut 0);
    if view.is_empty() {
        SelfLoopFree { residual: None, residual_to_original: Vec::new(), assigned }
    } else {
        let (residual, map) = view.extract_subgame().expect("residual stays left-total");
        SelfLoopFree { residual: Some(residual), residual_to_original: map, assigned }
    }
}

/// In-place form used by the solver: mutates `view` until self-loop-free and
/// returns the winners assigned along the way (ids of the base game).
/// `attractor_calls` counts the attractor invocations performed.
pub(crate) fn remove_self_loops_in_view(
    view: &mut GameView<'_>,
    attractor_calls: &mut usize,
) -> WinnerPartition {
    let mut assigned = WinnerPartition::empty(view.universe());
    loop {
        let Some(v) = view.live_vertices().find(|&v| view.has_live_self_loop(v)) else {
            return assigned;
        };
        let owner = view.game().owner_of(v);
        let winner = if owner.likes(view.game().priority_of(v)) {
            // Looping wins for the owner.
            Some(owner)
        } else if view.delete_self_loop(v) == 0 {
            // The loop was the only move: the owner is forced to loop and loses.
            Some(owner.opponent())
        } else {
            None
        };
        if let Some(winner) = winner {
            let targets = VertexSet::from_ids(view.universe(), &[v]);
            *attractor_calls += 1;
            let region = crate::attractor::attract(view, winner, &targets)
                .expect("target is live")
                .set;
            assigned.set_of_mut(winner).union_with(&region);
            view.remove_set(&region).expect("attractor complement is a trap");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig_game;

    #[test]
    fn build_fixture() {
        let g = fig_game();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.priority_of(2), 0);
        assert_eq!(g.owner_of(3), Owner::Odd);
        assert_eq!(g.successors(3), &[2, 3]);
        assert_eq!(g.predecessors(3), &[0, 2, 3]);
        assert!(g.has_self_loop(3));
        assert!(!g.has_self_loop(0));
    }

    #[test]
    fn build_rejects_empty() {
        assert_eq!(ParityGame::build(vec![]).unwrap_err(), GameError::EmptyGame);
    }

    #[test]
    fn build_rejects_dead_end() {
        let err = ParityGame::build(vec![VertexSpec::new(0, Owner::Even, vec![])]).unwrap_err();
        assert_eq!(err, GameError::DeadEnd(0));
    }

    #[test]
    fn build_rejects_bad_id() {
        let err = ParityGame::build(vec![VertexSpec::new(0, Owner::Even, vec![5])]).unwrap_err();
        assert_eq!(err, GameError::BadId { vertex: 0, successor: 5, bound: 1 });
    }

    #[test]
    fn build_dedups_edges() {
        let g = ParityGame::build(vec![
            VertexSpec::new(0, Owner::Even, vec![1, 1]),
            VertexSpec::new(1, Owner::Odd, vec![0]),
        ])
        .unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.successors(0), &[1]);
    }

    #[test]
    fn predecessor_successor_duality() {
        let g = fig_game();
        let mut from_preds: Vec<(VertexId, VertexId)> = Vec::new();
        for v in g.vertices() {
            for &p in g.predecessors(v) {
                from_preds.push((p, v));
            }
        }
        let mut from_succs: Vec<(VertexId, VertexId)> = Vec::new();
        for u in g.vertices() {
            for &s in g.successors(u) {
                from_succs.push((u, s));
            }
        }
        from_preds.sort_unstable();
        from_succs.sort_unstable();
        assert_eq!(from_preds, from_succs);
    }

    #[test]
    fn restrict_identity_and_everything() {
        let g = fig_game();
        let view = GameView::full(&g);
        let all = VertexSet::full(4);
        let none = VertexSet::empty(4);

        let empty = view.restrict(&all).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.max_priority(), None);

        let same = view.restrict(&none).unwrap();
        assert_eq!(same.live_count(), 4);
        assert_eq!(same.live_set(), view.live_set());
    }

    #[test]
    fn restrict_updates_out_degrees() {
        let g = fig_game();
        let view = GameView::full(&g);
        let sub = view.restrict(&VertexSet::from_ids(4, &[0, 1])).unwrap();
        assert_eq!(sub.live_count(), 2);
        assert_eq!(sub.live_out_degree(2), 1);
        assert_eq!(sub.live_out_degree(3), 2);
        assert_eq!(sub.live_successors(3).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn restrict_detects_stranded_vertex() {
        // 0 -> 1 -> 0 plus 1 -> 1 would be needed; build a game where cutting
        // vertex 1 strands vertex 0.
        let g = ParityGame::build(vec![
            VertexSpec::new(0, Owner::Even, vec![1]),
            VertexSpec::new(1, Owner::Odd, vec![0, 1]),
        ])
        .unwrap();
        let view = GameView::full(&g);
        let err = view.restrict(&VertexSet::from_ids(2, &[1])).unwrap_err();
        assert_eq!(err, GameError::DeadEndCreated(0));
    }

    #[test]
    fn max_priority_queries() {
        let g = fig_game();
        let view = GameView::full(&g);
        assert_eq!(view.max_priority(), Some(3));
        assert_eq!(view.max_priority_of(Owner::Even), Some(2));
        assert_eq!(view.max_priority_of(Owner::Odd), Some(3));

        let even_only = ParityGame::build(vec![
            VertexSpec::new(0, Owner::Even, vec![1]),
            VertexSpec::new(2, Owner::Odd, vec![0]),
        ])
        .unwrap();
        let view = GameView::full(&even_only);
        assert_eq!(view.max_priority_of(Owner::Odd), None);
        assert_eq!(view.max_priority_of(Owner::Even), Some(2));
    }

    #[test]
    fn self_loop_matching_owner_resolves_whole_fixture() {
        // Vertex 3: priority 3 (odd) owned by Odd. Odd's attractor to it is
        // the whole game.
        let g = fig_game();
        let out = remove_self_loops(&g);
        assert!(out.residual.is_none());
        assert_eq!(out.assigned.odd.ids(), vec![0, 1, 2, 3]);
        assert!(out.assigned.even.is_empty());
    }

    #[test]
    fn forced_loop_loses_for_owner() {
        let g = ParityGame::build(vec![VertexSpec::new(0, Owner::Even, vec![0])]).unwrap();
        let out = remove_self_loops(&g);
        assert!(out.residual.is_none());
        assert_eq!(out.assigned.even.ids(), vec![0]);
    }

    #[test]
    fn useless_loop_edge_is_deleted() {
        // Vertex 0 has priority 1 (odd) but is owned by Even: the loop is
        // useless, the edge goes away, the vertex stays.
        let g = ParityGame::build(vec![
            VertexSpec::new(1, Owner::Even, vec![0, 1]),
            VertexSpec::new(0, Owner::Odd, vec![0, 1]),
        ])
        .unwrap();
        // Vertex 1 also has a loop: priority 0 (even) owned by Odd, useless too.
        let out = remove_self_loops(&g);
        let residual = out.residual.expect("both vertices survive");
        assert_eq!(residual.vertex_count(), 2);
        assert_eq!(residual.successors(0), &[1]);
        assert_eq!(residual.successors(1), &[0]);
        assert!(out.assigned.even.is_empty() && out.assigned.odd.is_empty());
        assert_eq!(out.residual_to_original, vec![0, 1]);
    }

    #[test]
    fn winner_partition_helpers() {
        let mut p = WinnerPartition::empty(4);
        p.even.insert(0);
        p.odd.insert(1);
        assert_eq!(p.winner_of(0), Some(Owner::Even));
        assert_eq!(p.winner_of(2), None);
        assert!(!p.is_total_partition());
        p.even.insert(2);
        p.odd.insert(3);
        assert!(p.is_total_partition());

        let mut q = WinnerPartition::empty(4);
        q.even.union_with(&VertexSet::from_ids(4, &[0, 1]));
        q.odd.union_with(&VertexSet::from_ids(4, &[2, 3]));
        assert_eq!(p.disagreement(&q).ids(), vec![1, 2]);
    }
}
