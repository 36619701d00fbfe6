//! Snakes: sequences of points of `X` in (minimal) snake position.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{Kind, LieType};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, YMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnakePosition {
    NotSnake,
    Snake,
    MinimalSnake,
}

/// Position of `next` relative to `prev`.
pub fn snake_position(t: LieType, prev: LatticePoint, next: LatticePoint) -> Result<SnakePosition> {
    t.check_x(prev)?;
    t.check_x(next)?;
    let n = t.rank();
    let d = next.k - prev.k;
    let delta = (next.i as i64 - prev.i as i64).abs();
    let (bound, residue) = match t.kind() {
        Kind::A => (delta + 2, None),
        Kind::B if prev.i == n && next.i == n => (2, Some(2)),
        Kind::B if prev.i == n || next.i == n => (2 * delta + 3, Some(2 * delta - 1)),
        Kind::B => (2 * delta + 4, Some(2 * delta)),
    };
    let congruent = residue.is_none_or(|r| (d - r).rem_euclid(4) == 0);
    Ok(if d < bound || !congruent {
        SnakePosition::NotSnake
    } else if d == bound {
        SnakePosition::MinimalSnake
    } else {
        SnakePosition::Snake
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeReport {
    pub is_snake: bool,
    pub is_minimal: bool,
    pub is_minimal_affinization: bool,
}

/// Classifies a point sequence; points outside `X` make it a non-snake.
pub fn validate_snake(t: LieType, points: &[LatticePoint]) -> SnakeReport {
    let mut report = SnakeReport {
        is_snake: !points.is_empty() && points.iter().all(|p| t.in_x(p.i, p.k)),
        is_minimal: true,
        is_minimal_affinization: false,
    };
    if !report.is_snake {
        report.is_minimal = false;
        return report;
    }
    for w in points.windows(2) {
        match snake_position(t, w[0], w[1]).expect("points checked in X") {
            SnakePosition::NotSnake => {
                report.is_snake = false;
                report.is_minimal = false;
            }
            SnakePosition::Snake => report.is_minimal = false,
            SnakePosition::MinimalSnake => {}
        }
    }
    let monotone = points.windows(2).all(|w| w[0].i <= w[1].i)
        || points.windows(2).all(|w| w[0].i >= w[1].i);
    report.is_minimal_affinization = report.is_minimal && monotone;
    report
}

/// A validated snake.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Snake {
    lie_type: LieType,
    points: Vec<LatticePoint>,
}

impl Snake {
    pub fn new(t: LieType, points: Vec<LatticePoint>) -> Result<Snake> {
        if points.is_empty() {
            return Err(Error::Domain("a snake needs at least one point".into()));
        }
        for &p in &points {
            t.check_node(p.i)?;
            t.check_x(p)?;
        }
        for w in points.windows(2) {
            if snake_position(t, w[0], w[1])? == SnakePosition::NotSnake {
                return Err(Error::Domain(format!("{} is not in snake position to {}", w[1], w[0])));
            }
        }
        Ok(Snake { lie_type: t, points })
    }

    pub fn from_pairs(t: LieType, pairs: &[(usize, i64)]) -> Result<Snake> {
        Snake::new(t, pairs.iter().map(|&p| p.into()).collect())
    }

    /// Parses `"i1,k1;i2,k2;..."`.
    pub fn parse(t: LieType, s: &str) -> Result<Snake> {
        Snake::new(t, parse_points(s)?)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `∏ Y[i_t, k_t]`.
    pub fn highest_monomial(&self) -> YMonomial {
        YMonomial::from_triples(self.points.iter().map(|p| (p.i, p.k, 1)))
    }

    pub fn report(&self) -> SnakeReport {
        validate_snake(self.lie_type, &self.points)
    }
}

/// Parses the `"i,k;i,k"` point syntax without validating it.
pub fn parse_points(s: &str) -> Result<Vec<LatticePoint>> {
    s.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let bad = || Error::Parse(format!("bad snake point {part:?}, expected i,k"));
            let (i, k) = part.split_once(',').ok_or_else(bad)?;
            let i = usize::from_str(i.trim()).map_err(|_| bad())?;
            let k = i64::from_str(k.trim()).map_err(|_| bad())?;
            Ok(LatticePoint::new(i, k))
        })
        .collect()
}

impl fmt::Display for Snake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| format!("{},{}", p.i, p.k)).collect();
        f.write_str(&parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(pairs: &[(usize, i64)]) -> Vec<LatticePoint> {
        pairs.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn positions() {
        let a4 = LieType::a(4);
        let p = LatticePoint::new(2, 1);
        assert_eq!(snake_position(a4, p, LatticePoint::new(3, 4)).unwrap(), SnakePosition::MinimalSnake);
        assert_eq!(snake_position(a4, p, LatticePoint::new(3, 6)).unwrap(), SnakePosition::Snake);
        assert_eq!(snake_position(a4, p, LatticePoint::new(2, 3)).unwrap(), SnakePosition::MinimalSnake);
        assert_eq!(snake_position(a4, p, LatticePoint::new(3, 2)).unwrap(), SnakePosition::NotSnake);

        let b4 = LieType::b(4);
        let p = LatticePoint::new(4, 1);
        assert_eq!(snake_position(b4, p, LatticePoint::new(4, 3)).unwrap(), SnakePosition::MinimalSnake);
        assert_eq!(snake_position(b4, p, LatticePoint::new(4, 5)).unwrap(), SnakePosition::NotSnake);
        assert_eq!(snake_position(b4, p, LatticePoint::new(4, 7)).unwrap(), SnakePosition::Snake);
        assert!(snake_position(b4, p, LatticePoint::new(2, 1)).is_err());
        // Mixed and long-long cases.
        let b5 = LieType::b(5);
        let p = LatticePoint::new(4, 0);
        assert_eq!(snake_position(b5, p, LatticePoint::new(5, 5)).unwrap(), SnakePosition::MinimalSnake);
        assert_eq!(
            snake_position(b5, LatticePoint::new(5, 5), LatticePoint::new(4, 10)).unwrap(),
            SnakePosition::MinimalSnake
        );
        assert_eq!(snake_position(b4, LatticePoint::new(2, 0), LatticePoint::new(2, 4)).unwrap(), SnakePosition::MinimalSnake);
        assert_eq!(snake_position(b4, LatticePoint::new(2, 0), LatticePoint::new(2, 6)).unwrap(), SnakePosition::NotSnake);
    }

    #[test]
    fn classification_examples() {
        let a4 = LieType::a(4);
        let r = validate_snake(a4, &pts(&[(2, 1), (3, 4)]));
        assert!(r.is_snake && r.is_minimal && r.is_minimal_affinization);
        let r = validate_snake(a4, &pts(&[(2, 1), (3, 6)]));
        assert!(r.is_snake && !r.is_minimal && !r.is_minimal_affinization);
        let r = validate_snake(a4, &pts(&[(2, 1), (3, 4), (2, 7)]));
        assert!(r.is_snake && r.is_minimal && !r.is_minimal_affinization);
        let r = validate_snake(LieType::b(5), &pts(&[(4, 0), (5, 5), (4, 10)]));
        assert!(r.is_snake && r.is_minimal);
        // Kirillov-Reshetikhin strings count as minimal affinizations.
        let r = validate_snake(a4, &pts(&[(2, 1), (2, 3), (2, 5)]));
        assert!(r.is_minimal_affinization);
        assert!(!validate_snake(a4, &pts(&[(2, 2)])).is_snake);
        assert!(!validate_snake(a4, &[]).is_snake);
    }

    #[test]
    fn parse_and_display() {
        let b4 = LieType::b(4);
        let s = Snake::parse(b4, "4,1; 4,3").unwrap();
        assert_eq!(s.to_string(), "4,1;4,3");
        assert_eq!(s.highest_monomial(), YMonomial::from_triples([(4, 1, 1), (4, 3, 1)]));
        assert_eq!(Snake::parse(b4, "2,1"), Err(Error::NotInX(2, 1)));
        assert!(matches!(Snake::parse(b4, "4,1;4,5"), Err(Error::Domain(_))));
        assert!(matches!(Snake::parse(b4, "4;1"), Err(Error::Parse(_))));
        assert!(matches!(Snake::parse(b4, "9,1"), Err(Error::NodeOutOfRange { .. })));
    }

    proptest! {
        #[test]
        fn minimal_implies_snake(b in any::<bool>(), n in 2usize..7, i in 1usize..7, j in 1usize..7, d in 0i64..30) {
            let t = if b { LieType::b(n) } else { LieType::a(n) };
            let (i, j) = (1 + (i - 1) % n, 1 + (j - 1) % n);
            let k = (0..4).find(|&k| t.in_x(i, k)).unwrap();
            let p = LatticePoint::new(i, k);
            let q = LatticePoint::new(j, k + d);
            if let Ok(pos) = snake_position(t, p, q) {
                let snake = Snake::new(t, vec![p, q]);
                prop_assert_eq!(snake.is_ok(), pos != SnakePosition::NotSnake);
                if let Ok(s) = snake {
                    prop_assert!(s.highest_monomial().is_dominant());
                    prop_assert_eq!(s.report().is_minimal, pos == SnakePosition::MinimalSnake);
                }
            }
        }
    }
}
