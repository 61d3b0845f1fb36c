//! Known-correct reference solvers used as ground truth.
//!
//! Two independent routes are kept deliberately separate: Zielonka's
//! recursive algorithm (adapted to the min-priority convention by recursing
//! on the minimum live priority) and a brute-force enumerator of positional
//! strategies. Their agreement on seeded corpora is what licenses using
//! either as an oracle; a disagreement between them is always an
//! implementation bug here, never a finding about the solver under test.

use thiserror::Error;

use crate::attractor::{attract, is_trap};
use crate::game::{GameView, Owner, ParityGame, Priority, VertexId, WinnerPartition};
use crate::set::VertexSet;

/// Default bound on the positional strategy space the brute-force solver
/// will enumerate (product of out-degrees over all vertices).
pub const DEFAULT_STRATEGY_LIMIT: u64 = 1 << 20;

/// Default vertex bound for subset enumeration of dominions.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("strategy space of {0} positional pairs exceeds the enumeration limit")]
    StrategySpaceTooLarge(u128),
    #[error("game with {0} vertices exceeds the subset enumeration limit")]
    GameTooLarge(usize),
    #[error("the two sets do not disjointly cover the vertex set")]
    NotAPartition,
}

/// A positional strategy: a successor choice for some of one player's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub choice: Vec<Option<VertexId>>,
}

impl Strategy {
    pub fn empty(universe: usize) -> Self {
        Strategy { choice: vec![None; universe] }
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.choice[v as usize]
    }

    fn set(&mut self, v: VertexId, target: VertexId) {
        debug_assert!(self.choice[v as usize].is_none(), "strategy entry set twice");
        self.choice[v as usize] = Some(target);
    }

    fn merge(&mut self, other: &[Option<VertexId>]) {
        for (v, &c) in other.iter().enumerate() {
            if let Some(target) = c {
                self.set(v as VertexId, target);
            }
        }
    }
}

/// A finite description of an ultimately periodic play: stem into a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub stem: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
}

impl Lasso {
    /// Follows a functional successor map from `start` until a vertex repeats.
    pub fn trace(start: VertexId, succ: impl Fn(VertexId) -> VertexId, universe: usize) -> Lasso {
        let mut pos = vec![usize::MAX; universe];
        let mut path = Vec::new();
        let mut v = start;
        while pos[v as usize] == usize::MAX {
            pos[v as usize] = path.len();
            path.push(v);
            v = succ(v);
        }
        let cycle_start = pos[v as usize];
        let cycle = path.split_off(cycle_start);
        Lasso { stem: path, cycle }
    }

    pub fn min_cycle_priority(&self, game: &ParityGame) -> Priority {
        self.cycle.iter().map(|&v| game.priority_of(v)).min().expect("cycle is non-empty")
    }

    pub fn max_cycle_priority(&self, game: &ParityGame) -> Priority {
        self.cycle.iter().map(|&v| game.priority_of(v)).max().expect("cycle is non-empty")
    }
}

/// Which cycle priority decides a play: the convention's significant extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleRule {
    /// Winner has the parity of the minimum cycle priority (internal convention).
    MinPriority,
    /// Winner has the parity of the maximum cycle priority.
    MaxPriority,
}

// ---------------------------------------------------------------------------
// Zielonka
// ---------------------------------------------------------------------------

pub struct ZielonkaSolution {
    pub partition: WinnerPartition,
    pub strategy_even: Strategy,
    pub strategy_odd: Strategy,
}

impl ZielonkaSolution {
    pub fn strategy_of(&self, player: Owner) -> &Strategy {
        match player {
            Owner::Even => &self.strategy_even,
            Owner::Odd => &self.strategy_odd,
        }
    }
}

/// Zielonka's recursive algorithm over the live part of `view`.
///
/// Recurses on the minimum live priority (the significant one under the
/// min-priority convention). Self-loops need no special treatment. Returns
/// exact winning regions and positional winning strategies on them.
pub fn zielonka_solve(view: &GameView<'_>) -> ZielonkaSolution {
    let (partition, [even, odd]) = zielonka_rec(view);
    ZielonkaSolution {
        partition,
        strategy_even: Strategy { choice: even },
        strategy_odd: Strategy { choice: odd },
    }
}

type StrategyPair = [Vec<Option<VertexId>>; 2];

fn strategy_slot(pair: &mut StrategyPair, player: Owner) -> &mut Vec<Option<VertexId>> {
    match player {
        Owner::Even => &mut pair[0],
        Owner::Odd => &mut pair[1],
    }
}

fn zielonka_rec(view: &GameView<'_>) -> (WinnerPartition, StrategyPair) {
    let n = view.universe();
    let mut partition = WinnerPartition::empty(n);
    let mut strategies: StrategyPair = [vec![None; n], vec![None; n]];
    if view.is_empty() {
        return (partition, strategies);
    }

    let p = view.live_vertices().map(|v| view.game().priority_of(v)).min().unwrap();
    let player = Owner::of_priority(p);
    let opponent = player.opponent();
    let mut targets = VertexSet::empty(n);
    for v in view.live_vertices() {
        if view.game().priority_of(v) == p {
            targets.insert(v);
        }
    }

    let region = attract(view, player, &targets).expect("targets are live");
    let sub = view.restrict(&region.set).expect("attractor complement is left-total");
    let (sub_partition, sub_strategies) = zielonka_rec(&sub);

    if sub_partition.set_of(opponent).is_empty() {
        // The whole view goes to `player`: plays either settle in the
        // subgame (won there) or keep re-entering the attractor, visiting
        // priority p infinitely often.
        let mut won = sub_partition.set_of(player).clone();
        won.union_with(&region.set);
        *partition.set_of_mut(player) = won;

        let [sub_even, sub_odd] = sub_strategies;
        strategies = [sub_even, sub_odd];
        let slot = strategy_slot(&mut strategies, player);
        for (v, &c) in region.strategy.iter().enumerate() {
            if let Some(target) = c {
                debug_assert!(slot[v].is_none());
                slot[v] = Some(target);
            }
        }
        for v in targets.iter() {
            if view.game().owner_of(v) == player {
                debug_assert!(slot[v as usize].is_none());
                slot[v as usize] = view.live_successors(v).next();
            }
        }
    } else {
        let escape = attract(view, opponent, sub_partition.set_of(opponent))
            .expect("sub-winners are live");
        let sub2 = view.restrict(&escape.set).expect("attractor complement is left-total");
        let (final_partition, final_strategies) = zielonka_rec(&sub2);

        partition = final_partition;
        partition.set_of_mut(opponent).union_with(&escape.set);

        strategies = final_strategies;
        let slot = strategy_slot(&mut strategies, opponent);
        for (v, &c) in escape.strategy.iter().enumerate() {
            if let Some(target) = c {
                debug_assert!(slot[v].is_none());
                slot[v] = Some(target);
            }
        }
        // Inside the re-attracted winners the first recursion's strategy for
        // the opponent stays in force.
        let opponent_idx = match opponent {
            Owner::Even => 0,
            Owner::Odd => 1,
        };
        for v in sub_partition.set_of(opponent).iter() {
            if let Some(target) = sub_strategies[opponent_idx][v as usize] {
                debug_assert!(slot[v as usize].is_none());
                slot[v as usize] = Some(target);
            }
        }
    }
    (partition, strategies)
}

// ---------------------------------------------------------------------------
// Brute force over positional strategies
// ---------------------------------------------------------------------------

/// Exhaustive positional-strategy solver under the min-priority convention.
pub fn brute_force_solve(game: &ParityGame) -> Result<WinnerPartition, OracleError> {
    brute_force_solve_by(game, DEFAULT_STRATEGY_LIMIT, CycleRule::MinPriority)
}

/// Estimated number of positional strategy pairs (product of out-degrees).
pub fn strategy_space(game: &ParityGame) -> u128 {
    game.vertices()
        .map(|v| game.successors(v).len() as u128)
        .fold(1u128, |acc, d| acc.saturating_mul(d))
}

/// Brute force with an explicit strategy-space limit and cycle rule.
///
/// A vertex is won by Even iff some Even strategy beats every Odd strategy,
/// where a fixed strategy pair induces a functional graph and the unique
/// lasso from the vertex is scored by the chosen cycle rule. Positional
/// determinacy makes the remaining vertices Odd's.
pub fn brute_force_solve_by(
    game: &ParityGame,
    limit: u64,
    rule: CycleRule,
) -> Result<WinnerPartition, OracleError> {
    let pairs = strategy_space(game);
    if pairs > limit as u128 {
        return Err(OracleError::StrategySpaceTooLarge(pairs));
    }
    let n = game.vertex_count();
    let even_vertices: Vec<VertexId> =
        game.vertices().filter(|&v| game.owner_of(v) == Owner::Even).collect();
    let odd_vertices: Vec<VertexId> =
        game.vertices().filter(|&v| game.owner_of(v) == Owner::Odd).collect();

    let mut succ: Vec<VertexId> = vec![0; n];
    let mut wins_even = VertexSet::empty(n);
    let mut even_odo = Odometer::new(game, &even_vertices);
    let mut resolver = FunctionalWinners::new(n);
    loop {
        even_odo.apply(game, &even_vertices, &mut succ);
        let mut candidates = VertexSet::full(n);
        let mut odd_odo = Odometer::new(game, &odd_vertices);
        loop {
            odd_odo.apply(game, &odd_vertices, &mut succ);
            resolver.resolve(game, &succ, rule);
            for v in 0..n as VertexId {
                if candidates.contains(v) && resolver.winner[v as usize] == Owner::Odd {
                    candidates.remove(v);
                }
            }
            if candidates.is_empty() || !odd_odo.advance(game, &odd_vertices) {
                break;
            }
        }
        wins_even.union_with(&candidates);
        if !even_odo.advance(game, &even_vertices) {
            break;
        }
    }

    let odd = wins_even.complement();
    Ok(WinnerPartition { even: wins_even, odd })
}

/// Mixed-radix counter over successor choices of a fixed vertex list.
struct Odometer {
    digits: Vec<usize>,
}

impl Odometer {
    fn new(_game: &ParityGame, vertices: &[VertexId]) -> Odometer {
        Odometer { digits: vec![0; vertices.len()] }
    }

    fn apply(&self, game: &ParityGame, vertices: &[VertexId], succ: &mut [VertexId]) {
        for (i, &v) in vertices.iter().enumerate() {
            succ[v as usize] = game.successors(v)[self.digits[i]];
        }
    }

    fn advance(&mut self, game: &ParityGame, vertices: &[VertexId]) -> bool {
        for (i, &v) in vertices.iter().enumerate() {
            self.digits[i] += 1;
            if self.digits[i] < game.successors(v).len() {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

/// Winner of every start vertex in a functional graph, one O(n) pass.
struct FunctionalWinners {
    winner: Vec<Owner>,
    resolved: Vec<bool>,
    visit_round: Vec<u32>,
    round: u32,
    path: Vec<VertexId>,
    pos_in_path: Vec<usize>,
}

impl FunctionalWinners {
    fn new(n: usize) -> Self {
        FunctionalWinners {
            winner: vec![Owner::Even; n],
            resolved: vec![false; n],
            visit_round: vec![0; n],
            round: 0,
            path: Vec::with_capacity(n),
            pos_in_path: vec![0; n],
        }
    }

    fn resolve(&mut self, game: &ParityGame, succ: &[VertexId], rule: CycleRule) {
        self.resolved.iter_mut().for_each(|r| *r = false);
        for start in 0..succ.len() as VertexId {
            if self.resolved[start as usize] {
                continue;
            }
            self.round += 1;
            self.path.clear();
            let mut v = start;
            while !self.resolved[v as usize] && self.visit_round[v as usize] != self.round {
                self.visit_round[v as usize] = self.round;
                self.pos_in_path[v as usize] = self.path.len();
                self.path.push(v);
                v = succ[v as usize];
            }
            let w = if self.resolved[v as usize] {
                // The path feeds into an already-resolved lasso.
                self.winner[v as usize]
            } else {
                // Fresh cycle: score it from the entry point onwards.
                let cycle = &self.path[self.pos_in_path[v as usize]..];
                let decisive = match rule {
                    CycleRule::MinPriority => {
                        cycle.iter().map(|&u| game.priority_of(u)).min().unwrap()
                    }
                    CycleRule::MaxPriority => {
                        cycle.iter().map(|&u| game.priority_of(u)).max().unwrap()
                    }
                };
                Owner::of_priority(decisive)
            };
            for &u in &self.path {
                self.winner[u as usize] = w;
                self.resolved[u as usize] = true;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dominion enumeration
// ---------------------------------------------------------------------------

/// All inclusion-minimal dominions of `player`, by subset enumeration.
///
/// A candidate set must be closed for the player (the player's vertices keep
/// a successor inside, the opponent's keep all successors inside) and the
/// induced subgame must be won by the player everywhere (decided by
/// Zielonka). Subsets are visited smallest-first, so minimality only needs a
/// containment check against earlier hits.
pub fn enumerate_minimal_dominions(
    game: &ParityGame,
    player: Owner,
    limit: usize,
) -> Result<Vec<VertexSet>, OracleError> {
    let n = game.vertex_count();
    if n > limit {
        return Err(OracleError::GameTooLarge(n));
    }
    let full = GameView::full(game);
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    let mut minimal: Vec<VertexSet> = Vec::new();
    'mask: for mask in masks {
        let ids: Vec<VertexId> = (0..n as VertexId).filter(|&v| mask & (1 << v) != 0).collect();
        let set = VertexSet::from_ids(n, &ids);
        if minimal.iter().any(|d| d.is_subset_of(&set)) {
            continue;
        }
        for &v in &ids {
            let inside = |s: VertexId| set.contains(s);
            let ok = if game.owner_of(v) == player {
                game.successors(v).iter().copied().any(inside)
            } else {
                game.successors(v).iter().copied().all(inside)
            };
            if !ok {
                continue 'mask;
            }
        }
        let sub = full.restricted_to(&set).expect("closed sets induce left-total subgames");
        let solution = zielonka_solve(&sub);
        if set.is_subset_of(solution.partition.set_of(player)) {
            minimal.push(set);
        }
    }
    Ok(minimal)
}

/// True when `set` is a dominion for `player`: closed for the player and won
/// by the player everywhere in the induced subgame.
pub fn is_dominion(view: &GameView<'_>, player: Owner, set: &VertexSet) -> bool {
    if set.is_empty() || !set.is_subset_of(view.live_set()) {
        return false;
    }
    if !is_trap(view, player.opponent(), set) {
        return false;
    }
    let sub = view.restricted_to(set).expect("traps induce left-total subgames");
    let solution = zielonka_solve(&sub);
    set.is_subset_of(solution.partition.set_of(player))
}

// ---------------------------------------------------------------------------
// Partition verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Brute,
    Zielonka,
}

impl std::fmt::Display for OracleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleKind::Brute => write!(f, "brute"),
            OracleKind::Zielonka => write!(f, "zielonka"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    /// The Even winner set lets Odd escape at these vertices.
    EvenSetNotTrap { violators: Vec<VertexId> },
    /// The Odd winner set lets Even escape at these vertices.
    OddSetNotTrap { violators: Vec<VertexId> },
    /// Exact disagreement with the oracle partition.
    OracleMismatch { disagreeing: VertexSet },
}

#[derive(Debug)]
pub struct VerificationReport {
    pub oracle: OracleKind,
    pub failures: Vec<VerifyFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Vertices of `w` at which `player` can exit `w` (or is stuck outside it).
pub fn trap_violators(view: &GameView<'_>, player: Owner, w: &VertexSet) -> Vec<VertexId> {
    w.iter()
        .filter(|&v| {
            if view.game().owner_of(v) == player {
                view.live_successors(v).any(|s| !w.contains(s))
            } else {
                view.live_successors(v).all(|s| !w.contains(s))
            }
        })
        .collect()
}

/// Checks a claimed partition: trap necessary conditions plus exact oracle
/// comparison (brute force when the strategy space fits `brute_limit`,
/// Zielonka otherwise).
pub fn verify_partition(
    game: &ParityGame,
    partition: &WinnerPartition,
    brute_limit: u64,
) -> Result<VerificationReport, OracleError> {
    if !partition.is_total_partition() || partition.even.universe() != game.vertex_count() {
        return Err(OracleError::NotAPartition);
    }
    let view = GameView::full(game);
    let mut failures = Vec::new();

    let even_violators = trap_violators(&view, Owner::Odd, &partition.even);
    if !even_violators.is_empty() {
        failures.push(VerifyFailure::EvenSetNotTrap { violators: even_violators });
    }
    let odd_violators = trap_violators(&view, Owner::Even, &partition.odd);
    if !odd_violators.is_empty() {
        failures.push(VerifyFailure::OddSetNotTrap { violators: odd_violators });
    }

    let (oracle, reference) = if strategy_space(game) <= brute_limit as u128 {
        (OracleKind::Brute, brute_force_solve_by(game, brute_limit, CycleRule::MinPriority)?)
    } else {
        (OracleKind::Zielonka, zielonka_solve(&view).partition)
    };
    let disagreeing = partition.disagreement(&reference);
    if !disagreeing.is_empty() {
        failures.push(VerifyFailure::OracleMismatch { disagreeing });
    }
    Ok(VerificationReport { oracle, failures })
}
