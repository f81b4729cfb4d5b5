use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Num;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relstruct::{TernaryRel, Tournament};

/// Scalars usable as circle positions in `[0,1)`.
pub trait CircleScalar: Num + Clone + PartialOrd + fmt::Display + fmt::Debug + FromStr {
    fn floor_value(&self) -> Self;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    /// Reduces into `[0,1)`.
    fn wrap_unit(self) -> Self {
        let f = self.floor_value();
        self - f
    }
}

impl CircleScalar for Rational64 {
    fn floor_value(&self) -> Self {
        self.floor()
    }
}

impl CircleScalar for f64 {
    fn floor_value(&self) -> Self {
        self.floor()
    }
}

/// Points on the unit circle (as fractions of a full turn), pairwise
/// distinct and with no two antipodal.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleConfig<T> {
    positions: Vec<T>,
}

/// JSON form: positions as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleDoc {
    pub positions: Vec<String>,
}

impl<T: CircleScalar> CircleConfig<T> {
    pub fn new(positions: Vec<T>) -> Result<Self> {
        let zero = T::zero();
        let one = T::one();
        for p in &positions {
            if *p < zero || *p >= one {
                return Err(Error::InvalidInput(format!("position {p} is outside [0,1)")));
            }
        }
        for (i, p) in positions.iter().enumerate() {
            for q in &positions[..i] {
                if p == q {
                    return Err(Error::InvalidInput(format!("position {p} repeated")));
                }
                if (p.clone() - q.clone()).wrap_unit() == T::half() {
                    return Err(Error::InvalidInput(format!("positions {q} and {p} are antipodal")));
                }
            }
        }
        Ok(CircleConfig { positions })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[T] {
        &self.positions
    }

    /// Clockwise distance from point `x` to point `y`, in `[0,1)`.
    pub fn clockwise(&self, x: usize, y: usize) -> T {
        (self.positions[y].clone() - self.positions[x].clone()).wrap_unit()
    }

    /// `x → y`: the clockwise distance from `x` to `y` is less than half a turn.
    pub fn arc(&self, x: usize, y: usize) -> bool {
        x != y && self.clockwise(x, y) < T::half()
    }

    pub fn tournament(&self) -> Tournament {
        Tournament::from_fn(self.n(), |x, y| self.arc(x, y)).expect("non-antipodal points give a tournament")
    }

    /// The middle-of-a-transitive-triple relation of the derived tournament.
    pub fn r_relation(&self) -> TernaryRel {
        self.tournament().middle_relation()
    }

    /// Three distinct points lie in an open half circle iff some circular gap
    /// between consecutive points exceeds one half.
    pub fn in_open_half_circle(&self, triple: [usize; 3]) -> bool {
        let mut p: Vec<T> = triple.iter().map(|&i| self.positions[i].clone()).collect();
        p.sort_by(|a, b| a.partial_cmp(b).expect("comparable positions"));
        let g1 = p[1].clone() - p[0].clone();
        let g2 = p[2].clone() - p[1].clone();
        let g3 = T::one() - (p[2].clone() - p[0].clone());
        let half = T::half();
        g1 > half || g2 > half || g3 > half
    }

    pub fn to_doc(&self) -> CircleDoc {
        CircleDoc { positions: self.positions.iter().map(|p| p.to_string()).collect() }
    }

    pub fn from_doc(doc: &CircleDoc) -> Result<Self> {
        let mut positions = Vec::with_capacity(doc.positions.len());
        for s in &doc.positions {
            let p = s
                .trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse position `{s}`")))?;
            positions.push(p);
        }
        Self::new(positions)
    }

    /// The configuration restricted to `points`, in listing order.
    pub fn induced(&self, points: &[usize]) -> Self {
        CircleConfig { positions: points.iter().map(|&i| self.positions[i].clone()).collect() }
    }
}

/// Places `n` points with denominator `denominator` uniformly at random,
/// rejecting collisions and antipodal pairs; points are returned in
/// increasing position.
pub fn build_circle_config(n: usize, denominator: i64, seed: u64) -> Result<CircleConfig<Rational64>> {
    if n == 0 {
        return Err(Error::InvalidInput("circle configuration needs at least one point".into()));
    }
    if denominator < 2 * n as i64 {
        return Err(Error::InvalidInput(format!("denominator {denominator} is below 2n = {}", 2 * n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = 64 * n + 64;
    let half = CircleScalar::half();
    let mut chosen: Vec<Rational64> = Vec::with_capacity(n);
    for _ in 0..attempts {
        if chosen.len() == n {
            break;
        }
        let p = Rational64::new(rng.gen_range(0..denominator), denominator);
        if chosen.iter().any(|q| *q == p || (p - q).wrap_unit() == half) {
            continue;
        }
        chosen.push(p);
    }
    if chosen.len() < n {
        return Err(Error::CirclePlacement { n, denominator, attempts });
    }
    chosen.sort();
    CircleConfig::new(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn three_cycle() {
        let c = CircleConfig::new(vec![r(0, 1), r(3, 10), r(6, 10)]).unwrap();
        assert!(c.arc(0, 1) && c.arc(1, 2) && c.arc(2, 0));
        assert!(c.tournament().is_cycle(0, 1, 2));
        assert!(!c.in_open_half_circle([0, 1, 2]));
    }

    #[test]
    fn linear_triple() {
        let c = CircleConfig::new(vec![r(0, 1), r(1, 10), r(2, 10)]).unwrap();
        assert!(c.arc(0, 1) && c.arc(1, 2) && c.arc(0, 2));
        assert!(c.in_open_half_circle([0, 1, 2]));
    }

    #[test]
    fn antipodal_rejected() {
        assert!(CircleConfig::new(vec![r(1, 10), r(6, 10)]).is_err());
        assert!(CircleConfig::new(vec![r(1, 10), r(1, 10)]).is_err());
        assert!(CircleConfig::new(vec![r(1, 1)]).is_err());
    }

    #[test]
    fn float_positions() {
        let c = CircleConfig::new(vec![0.0, 0.3, 0.6]).unwrap();
        assert!(c.tournament().is_cycle(0, 1, 2));
    }

    #[test]
    fn doc_round_trip() {
        let c = CircleConfig::new(vec![r(0, 1), r(3, 20), r(3, 10)]).unwrap();
        let doc = c.to_doc();
        assert_eq!(doc.positions, vec!["0", "3/20", "3/10"]);
        assert_eq!(CircleConfig::<Rational64>::from_doc(&doc).unwrap(), c);
    }

    #[test]
    fn builder_contract() {
        assert!(build_circle_config(5, 9, 0).is_err());
        let a = build_circle_config(12, 48, 4).unwrap();
        let b = build_circle_config(12, 48, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 12);
        assert!(a.tournament().is_local_order());
    }
}
