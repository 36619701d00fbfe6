//! Fixed inputs shared by the benchmarks.

use snakechar::{LieType, Snake};

/// Named snakes of increasing size.
pub fn snakes() -> Vec<(&'static str, Snake)> {
    [
        ("A4 (2,1)", LieType::a(4), "2,1"),
        ("B4 (4,1)(4,3)", LieType::b(4), "4,1;4,3"),
        ("B4 (2,0)(2,4)", LieType::b(4), "2,0;2,4"),
        ("A5 KR 3x3", LieType::a(5), "3,0;3,2;3,4"),
        ("B4 (1,0)(3,8)(2,14)", LieType::b(4), "1,0;3,8;2,14"),
    ]
    .into_iter()
    .map(|(name, t, s)| (name, Snake::parse(t, s).expect("fixture is a snake")))
    .collect()
}

/// Snakes in `X'`, for the tableau side.
pub fn diagram_snakes() -> Vec<(&'static str, Snake)> {
    snakes()
        .into_iter()
        .filter(|(_, s)| s.points().iter().all(|p| s.lie_type().in_x_prime(p.i, p.k)))
        .collect()
}
