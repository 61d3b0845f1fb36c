//! Shared unit-test fixtures.

use crate::game::{Owner, ParityGame, VertexSpec};

/// The four-vertex example game: priorities 1, 2, 0, 3 with a self-loop on
/// vertex 3 (priority 3, Odd-owned). Odd wins everywhere.
pub(crate) fn fig_game() -> ParityGame {
    ParityGame::build(vec![
        VertexSpec::new(1, Owner::Even, vec![1, 3]),
        VertexSpec::new(2, Owner::Odd, vec![0, 2]),
        VertexSpec::new(0, Owner::Even, vec![3]),
        VertexSpec::new(3, Owner::Odd, vec![2, 3]),
    ])
    .unwrap()
}

/// The fixture minus its self-loop; Even wins everywhere.
pub(crate) fn g4() -> ParityGame {
    ParityGame::build(vec![
        VertexSpec::new(1, Owner::Even, vec![1, 3]),
        VertexSpec::new(2, Owner::Odd, vec![0, 2]),
        VertexSpec::new(0, Owner::Even, vec![3]),
        VertexSpec::new(3, Owner::Odd, vec![2]),
    ])
    .unwrap()
}

/// Two-vertex cycle a(priority 0, Even) <-> b(priority 1, Odd); Even wins both.
pub(crate) fn two_cycle() -> ParityGame {
    ParityGame::build(vec![
        VertexSpec::new(0, Owner::Even, vec![1]),
        VertexSpec::new(1, Owner::Odd, vec![0]),
    ])
    .unwrap()
}
