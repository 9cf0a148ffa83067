use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{pentagram, Assignment, EdgeId, GameParams, NUM_EDGES, NUM_PAIRS, NUM_VERTICES};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

/// A deterministic strategy: one assignment per edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    pub player: Player,
    pub edges: [Assignment; NUM_EDGES],
}

#[derive(Serialize, Deserialize)]
struct StrategyFile {
    player: Player,
    edges: BTreeMap<String, Assignment>,
}

impl DeterministicStrategy {
    pub fn new(player: Player, edges: [Assignment; NUM_EDGES]) -> Self {
        Self { player, edges }
    }

    pub fn constant(player: Player, a: Assignment) -> Self {
        Self { player, edges: [a; NUM_EDGES] }
    }

    /// Answer on edge `s` with the labels of its vertices.
    pub fn from_labeling(player: Player, labeling: &[i8; NUM_VERTICES]) -> Result<Self> {
        let pg = pentagram();
        let mut edges = [Assignment::ONES; NUM_EDGES];
        for s in EdgeId::all() {
            edges[s.index()] = Assignment::new(pg.edge_vertex_ids(s).map(|v| labeling[v]))?;
        }
        Ok(Self { player, edges })
    }

    /// Four-bit masks per edge (see [`Assignment::from_mask`]).
    pub fn from_masks(player: Player, masks: [u8; NUM_EDGES]) -> Self {
        Self { player, edges: masks.map(Assignment::from_mask) }
    }

    pub fn answer(&self, s: EdgeId) -> Assignment {
        self.edges[s.index()]
    }

    pub fn to_json(&self) -> String {
        let file = StrategyFile {
            player: self.player,
            edges: EdgeId::all().into_iter().map(|s| (s.to_string(), self.answer(s))).collect(),
        };
        serde_json::to_string(&file).expect("strategy serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: StrategyFile = serde_json::from_str(s)?;
        let mut edges = [None; NUM_EDGES];
        for (key, a) in file.edges {
            let id: u8 = key.parse().map_err(|_| Error::Parse(format!("edge key {key:?}")))?;
            let s = EdgeId::new(id)?;
            edges[s.index()] = Some(a);
        }
        let mut out = [Assignment::ONES; NUM_EDGES];
        for (i, a) in edges.into_iter().enumerate() {
            out[i] = a.ok_or_else(|| Error::Parse(format!("strategy lacks edge {i}")))?;
        }
        Ok(Self { player: file.player, edges: out })
    }
}

/// Number of winning ordered pairs out of 20.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WinRatio {
    pub wins: u32,
}

impl WinRatio {
    pub fn ratio(&self) -> Ratio<u32> {
        Ratio::new(self.wins, NUM_PAIRS)
    }

    pub fn as_f64(&self) -> f64 {
        self.wins as f64 / NUM_PAIRS as f64
    }
}

impl fmt::Display for WinRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.wins, NUM_PAIRS)
    }
}

/// Exact winning probability under uniformly random distinct questions.
pub fn win_probability(a: &DeterministicStrategy, b: &DeterministicStrategy, p: &GameParams) -> WinRatio {
    let pg = pentagram();
    let mut wins = 0;
    for x in EdgeId::all() {
        for y in EdgeId::all().into_iter().filter(|&y| y != x) {
            if pg.referee(x, y, &a.answer(x), &b.answer(y), p).expect("distinct edges") {
                wins += 1;
            }
        }
    }
    WinRatio { wins }
}
