//! The magic pentagram game and its parameterized variant.
//!
//! Five hyperedges (questions) pairwise meet in exactly one of ten vertices.
//! Each vertex carries a three-qubit observable over `{I, X, Z}`; the four
//! observables on an edge commute and multiply to `e(s)·I`, with `e(4) = -1`
//! and `e(s) = +1` otherwise. A player asked edge `s` answers four `±1`
//! values, the `j`-th going to the vertex shared with the edge `t` of rank
//! `o_s(t) = j`.

mod search;
mod strategy;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliWord};

pub use search::{brute_force_optimal, best_response, Optimum};
pub use strategy::{win_probability, DeterministicStrategy, Player, WinRatio};

pub const NUM_EDGES: usize = 5;
pub const NUM_VERTICES: usize = 10;
/// Number of ordered question pairs `(x, y)` with `x != y`.
pub const NUM_PAIRS: u32 = 20;

/// A hyperedge, `0..=4`, with 3-bit code `000..100`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct EdgeId(u8);

impl EdgeId {
    pub fn new(id: u8) -> Result<Self> {
        if id < NUM_EDGES as u8 {
            Ok(EdgeId(id))
        } else {
            Err(Error::InvalidEdge(id))
        }
    }

    pub fn all() -> [EdgeId; NUM_EDGES] {
        [EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(3), EdgeId(4)]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// Three-bit code, most significant bit first.
    pub fn code(self) -> [bool; 3] {
        [self.0 & 4 != 0, self.0 & 2 != 0, self.0 & 1 != 0]
    }

    /// `None` for the idle codes `101`, `110`, `111`.
    pub fn from_code(code: [bool; 3]) -> Option<EdgeId> {
        let v = (code[0] as u8) << 2 | (code[1] as u8) << 1 | code[2] as u8;
        EdgeId::new(v).ok()
    }
}

impl TryFrom<u8> for EdgeId {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        EdgeId::new(v)
    }
}

impl From<EdgeId> for u8 {
    fn from(e: EdgeId) -> u8 {
        e.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `e(s)`: the required product of a player's answers on edge `s`.
pub fn e(s: EdgeId) -> i8 {
    if s.0 == 4 {
        -1
    } else {
        1
    }
}

/// `o_s(t)`: rank in `1..=4` of `t` among the edges other than `s`, ascending.
pub fn order(s: EdgeId, t: EdgeId) -> Result<usize> {
    if s == t {
        return Err(Error::InvalidPair(s.0, t.0));
    }
    Ok(if t.0 < s.0 { t.0 as usize + 1 } else { t.0 as usize })
}

/// The edge `t` with `o_s(t) = rank`.
pub fn partner(s: EdgeId, rank: usize) -> EdgeId {
    assert!((1..=4).contains(&rank), "rank {rank} outside 1..=4");
    let t = rank as u8 - 1;
    EdgeId(if t < s.0 { t } else { t + 1 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub vid: usize,
    pub observable: PauliWord,
    pub edges: (EdgeId, EdgeId),
}

/// Edge pair and observable of each vertex, indexed by vertex id.
const VERTEX_TABLE: [((u8, u8), &str); NUM_VERTICES] = [
    ((1, 2), "XII"),
    ((0, 2), "IXI"),
    ((0, 1), "IIX"),
    ((0, 3), "ZII"),
    ((1, 3), "IZI"),
    ((2, 3), "IIZ"),
    ((0, 4), "ZXX"),
    ((1, 4), "XZX"),
    ((2, 4), "XXZ"),
    ((3, 4), "ZZZ"),
];

#[derive(Debug, Clone)]
pub struct Pentagram {
    vertices: Vec<Vertex>,
    // vertex id at rank 1..=4 of each edge (stored at 0..4)
    edges: [[usize; 4]; NUM_EDGES],
    pair_vertex: [[usize; NUM_EDGES]; NUM_EDGES],
}

impl Pentagram {
    /// The canonical pentagram. Structural invariants are checked here and a
    /// violation panics, since the table is fixed.
    pub fn build() -> Self {
        let vertices: Vec<Vertex> = VERTEX_TABLE
            .iter()
            .enumerate()
            .map(|(vid, &((a, b), obs))| Vertex {
                vid,
                observable: obs.parse().expect("static observable"),
                edges: (EdgeId(a), EdgeId(b)),
            })
            .collect();
        let mut pair_vertex = [[usize::MAX; NUM_EDGES]; NUM_EDGES];
        for v in &vertices {
            let (a, b) = (v.edges.0.index(), v.edges.1.index());
            assert_eq!(pair_vertex[a][b], usize::MAX, "edges {a},{b} share two vertices");
            pair_vertex[a][b] = v.vid;
            pair_vertex[b][a] = v.vid;
        }
        let mut edges = [[0usize; 4]; NUM_EDGES];
        for s in EdgeId::all() {
            for rank in 1..=4 {
                let t = partner(s, rank);
                let vid = pair_vertex[s.index()][t.index()];
                assert_ne!(vid, usize::MAX, "edges {s},{t} do not meet");
                edges[s.index()][rank - 1] = vid;
            }
        }
        let p = Pentagram { vertices, edges, pair_vertex };
        p.check_invariants().expect("canonical pentagram invariants");
        p
    }

    /// Verify every structural property of the pentagram.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut on_edges = [0usize; NUM_VERTICES];
        for s in EdgeId::all() {
            for &v in &self.edges[s.index()] {
                on_edges[v] += 1;
            }
        }
        if on_edges.iter().any(|&c| c != 2) {
            return Err(format!("vertex edge counts {on_edges:?}"));
        }
        for v in &self.vertices {
            let ok = v.observable.phase().sign() == Some(1)
                && v.observable.factors().iter().all(|&f| f != Pauli::Y);
            if !ok {
                return Err(format!("vertex {} observable {}", v.vid, v.observable));
            }
        }
        let mut e_prod = 1;
        for s in EdgeId::all() {
            let obs: Vec<&PauliWord> = self.edge_vertices(s).iter().map(|v| &v.observable).collect();
            for i in 0..4 {
                for j in i + 1..4 {
                    if !obs[i].commutes(obs[j]).map_err(|e| e.to_string())? {
                        return Err(format!("edge {s}: {} and {} anticommute", obs[i], obs[j]));
                    }
                }
            }
            let mut prod = PauliWord::identity(3);
            for o in &obs {
                prod = prod.mul(o).map_err(|e| e.to_string())?;
            }
            let expected = if e(s) == 1 { PauliWord::identity(3) } else { PauliWord::identity(3).negated() };
            if prod != expected {
                return Err(format!("edge {s} product {prod}, expected {expected}"));
            }
            e_prod *= e(s);
        }
        if e_prod != -1 {
            return Err("product of e(s) is not -1".into());
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, vid: usize) -> &Vertex {
        &self.vertices[vid]
    }

    /// Vertex ids of edge `s` in rank order.
    pub fn edge_vertex_ids(&self, s: EdgeId) -> [usize; 4] {
        self.edges[s.index()]
    }

    /// Vertices of edge `s` in rank order.
    pub fn edge_vertices(&self, s: EdgeId) -> [&Vertex; 4] {
        self.edges[s.index()].map(|v| &self.vertices[v])
    }

    /// The observables of edge `s` in rank order.
    pub fn edge_observables(&self, s: EdgeId) -> [PauliWord; 4] {
        self.edge_vertices(s).map(|v| v.observable.clone())
    }

    /// The vertex shared by `x` and `y`.
    pub fn intersection(&self, x: EdgeId, y: EdgeId) -> Result<&Vertex> {
        if x == y {
            return Err(Error::InvalidPair(x.0, y.0));
        }
        Ok(&self.vertices[self.pair_vertex[x.index()][y.index()]])
    }

    /// `L_{x,y}(p)`: product of `α_j` over qubits where the shared vertex has
    /// an `X` factor and of `β_k` over qubits with a `Z` factor.
    pub fn l_value(&self, x: EdgeId, y: EdgeId, p: &GameParams) -> Result<i8> {
        let v = self.intersection(x, y)?;
        Ok(l_for_observable(&v.observable, p))
    }

    /// Winning predicate of the (parameterized) game.
    pub fn referee(&self, x: EdgeId, y: EdgeId, z: &Assignment, w: &Assignment, p: &GameParams) -> Result<bool> {
        let target = self.l_value(x, y, p)?;
        let zi = z.at_rank(order(x, y)?);
        let wi = w.at_rank(order(y, x)?);
        Ok(z.product() == e(x) && w.product() == e(y) && zi * wi == target)
    }

    /// Edges whose product under a global vertex labeling differs from `e(s)`.
    /// The count is always odd, since `∏ e(s) = -1` while every vertex is
    /// counted twice.
    pub fn violated_edges(&self, labeling: &[i8]) -> Result<Vec<EdgeId>> {
        if labeling.len() != NUM_VERTICES {
            return Err(Error::InvalidInput(format!(
                "labeling covers {} vertices, expected {NUM_VERTICES}",
                labeling.len()
            )));
        }
        if labeling.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidInput("labeling values must be ±1".into()));
        }
        Ok(EdgeId::all()
            .into_iter()
            .filter(|&s| self.edges[s.index()].iter().map(|&v| labeling[v]).product::<i8>() != e(s))
            .collect())
    }
}

pub fn l_for_observable(obs: &PauliWord, p: &GameParams) -> i8 {
    (0..3)
        .map(|j| match obs.factor(j) {
            Pauli::X => p.alpha(j),
            Pauli::Z => p.beta(j),
            _ => 1,
        })
        .product()
}

/// Shared canonical pentagram.
pub fn pentagram() -> &'static Pentagram {
    static P: OnceLock<Pentagram> = OnceLock::new();
    P.get_or_init(Pentagram::build)
}

/// `(α₁, β₁, α₂, β₂, α₃, β₃)`, each `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct GameParams([i8; 6]);

impl GameParams {
    pub const ONES: GameParams = GameParams([1; 6]);

    pub fn new(values: [i8; 6]) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidInput(format!("game parameters must be ±1, got {values:?}")));
        }
        Ok(GameParams(values))
    }

    pub fn from_alpha_beta(alpha: [i8; 3], beta: [i8; 3]) -> Result<Self> {
        Self::new([alpha[0], beta[0], alpha[1], beta[1], alpha[2], beta[2]])
    }

    /// All 64 parameter vectors; bit `i` of the index set means component `i` is `-1`.
    pub fn all() -> impl Iterator<Item = GameParams> {
        (0u8..64).map(|m| GameParams(std::array::from_fn(|i| if m >> i & 1 == 1 { -1 } else { 1 })))
    }

    /// `α_{j+1}` for `j` in `0..3`.
    pub fn alpha(&self, j: usize) -> i8 {
        self.0[2 * j]
    }

    /// `β_{j+1}` for `j` in `0..3`.
    pub fn beta(&self, j: usize) -> i8 {
        self.0[2 * j + 1]
    }

    pub fn values(&self) -> [i8; 6] {
        self.0
    }
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams::ONES
    }
}

impl TryFrom<Vec<i8>> for GameParams {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        let arr: [i8; 6] = v
            .try_into()
            .map_err(|v: Vec<i8>| Error::InvalidInput(format!("expected 6 parameters, got {}", v.len())))?;
        GameParams::new(arr)
    }
}

impl From<GameParams> for Vec<i8> {
    fn from(p: GameParams) -> Self {
        p.0.to_vec()
    }
}

/// Four `±1` answers indexed by rank (`at_rank(1)` is the first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct Assignment([i8; 4]);

impl Assignment {
    pub const ONES: Assignment = Assignment([1; 4]);

    pub fn new(values: [i8; 4]) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidInput(format!("assignment values must be ±1, got {values:?}")));
        }
        Ok(Assignment(values))
    }

    /// Assignment from a 4-bit mask: bit `i` set means rank `i+1` is `-1`.
    pub fn from_mask(mask: u8) -> Self {
        Assignment(std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 }))
    }

    pub fn mask(&self) -> u8 {
        self.0.iter().enumerate().fold(0, |m, (i, &v)| m | (u8::from(v == -1) << i))
    }

    pub fn at_rank(&self, rank: usize) -> i8 {
        self.0[rank - 1]
    }

    pub fn values(&self) -> [i8; 4] {
        self.0
    }

    pub fn product(&self) -> i8 {
        self.0.iter().product()
    }

    pub fn flipped(mut self, rank: usize) -> Self {
        self.0[rank - 1] = -self.0[rank - 1];
        self
    }
}

impl TryFrom<Vec<i8>> for Assignment {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        let arr: [i8; 4] = v
            .try_into()
            .map_err(|v: Vec<i8>| Error::InvalidInput(format!("expected 4 values, got {}", v.len())))?;
        Assignment::new(arr)
    }
}

impl From<Assignment> for Vec<i8> {
    fn from(a: Assignment) -> Self {
        a.0.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(i: u8) -> EdgeId {
        EdgeId::new(i).unwrap()
    }

    fn obs(s: u8) -> Vec<String> {
        pentagram().edge_observables(edge(s)).iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn edge_codes() {
        for s in EdgeId::all() {
            assert_eq!(EdgeId::from_code(s.code()), Some(s));
        }
        assert_eq!(edge(3).code(), [false, true, true]);
        assert_eq!(EdgeId::from_code([true, false, true]), None);
        assert_eq!(EdgeId::from_code([true, true, true]), None);
        assert!(EdgeId::new(5).is_err());
    }

    #[test]
    fn canonical_edges() {
        let mut e4 = obs(4);
        e4.sort();
        assert_eq!(e4, ["+XXZ", "+XZX", "+ZXX", "+ZZZ"]);
        let mut e0 = obs(0);
        e0.sort();
        assert_eq!(e0, ["+IIX", "+IXI", "+ZII", "+ZXX"]);
        assert_eq!(obs(3), ["+ZII", "+IZI", "+IIZ", "+ZZZ"]);
    }

    #[test]
    fn e_values() {
        assert_eq!(EdgeId::all().map(e), [1, 1, 1, 1, -1]);
    }

    #[test]
    fn order_table() {
        assert_eq!(order(edge(0), edge(3)).unwrap(), 3);
        assert_eq!(order(edge(4), edge(0)).unwrap(), 1);
        assert_eq!(order(edge(0), edge(0)), Err(Error::InvalidPair(0, 0)));
        for s in EdgeId::all() {
            let mut ranks: Vec<usize> = EdgeId::all().into_iter().filter(|&t| t != s).map(|t| order(s, t).unwrap()).collect();
            ranks.sort();
            assert_eq!(ranks, [1, 2, 3, 4]);
            for r in 1..=4 {
                assert_eq!(order(s, partner(s, r)).unwrap(), r);
            }
        }
        for j in 1..=4 {
            assert_eq!(order(edge(0), edge(j)).unwrap(), j as usize);
        }
    }

    #[test]
    fn intersections() {
        let p = pentagram();
        assert_eq!(p.intersection(edge(0), edge(4)).unwrap().observable.to_string(), "+ZXX");
        assert_eq!(p.intersection(edge(0), edge(4)).unwrap(), p.intersection(edge(4), edge(0)).unwrap());
        assert_eq!(p.intersection(edge(3), edge(4)).unwrap().observable.to_string(), "+ZZZ");
        assert!(p.intersection(edge(2), edge(2)).is_err());
        // uniqueness scan: the shared vertex is the only one on both edges
        for x in EdgeId::all() {
            for y in EdgeId::all().into_iter().filter(|&y| y != x) {
                let ex = p.edge_vertex_ids(x);
                let shared: Vec<usize> = p.edge_vertex_ids(y).into_iter().filter(|v| ex.contains(v)).collect();
                assert_eq!(shared, vec![p.intersection(x, y).unwrap().vid]);
            }
        }
    }

    #[test]
    fn l_values() {
        let p = pentagram();
        let (x, y) = (edge(0), edge(4));
        assert_eq!(p.l_value(x, y, &GameParams::ONES).unwrap(), 1);
        let beta1 = GameParams::new([1, -1, 1, 1, 1, 1]).unwrap();
        assert_eq!(p.l_value(x, y, &beta1).unwrap(), -1);
        let a2a3 = GameParams::new([1, 1, -1, 1, -1, 1]).unwrap();
        assert_eq!(p.l_value(x, y, &a2a3).unwrap(), 1);
        assert!(p.l_value(x, x, &a2a3).is_err());
    }

    #[test]
    fn l_value_properties() {
        let p = pentagram();
        for params in GameParams::all() {
            for x in EdgeId::all() {
                for y in EdgeId::all().into_iter().filter(|&y| y != x) {
                    let l = p.l_value(x, y, &params).unwrap();
                    assert_eq!(l * l, 1);
                    assert_eq!(l, p.l_value(y, x, &params).unwrap());
                    // flipping a parameter whose qubit factor is absent leaves L unchanged
                    let v = &p.intersection(x, y).unwrap().observable;
                    for i in 0..6 {
                        let mut vals = params.values();
                        vals[i] = -vals[i];
                        let flipped = GameParams::new(vals).unwrap();
                        let (qubit, is_alpha) = (i / 2, i % 2 == 0);
                        let present = match v.factor(qubit) {
                            Pauli::X => is_alpha,
                            Pauli::Z => !is_alpha,
                            _ => false,
                        };
                        let l2 = p.l_value(x, y, &flipped).unwrap();
                        assert_eq!(l2, if present { -l } else { l });
                    }
                }
            }
        }
    }

    #[test]
    fn referee_examples() {
        let p = pentagram();
        let ones = Assignment::ONES;
        assert!(p.referee(edge(0), edge(3), &ones, &ones, &GameParams::ONES).unwrap());
        for mask in 0..16 {
            let w = Assignment::from_mask(mask);
            assert!(!p.referee(edge(4), edge(0), &ones, &w, &GameParams::ONES).unwrap());
        }
        let w = Assignment::new([-1, 1, 1, -1]).unwrap();
        assert_eq!(order(edge(4), edge(0)).unwrap(), 1);
        assert!(!p.referee(edge(0), edge(4), &ones, &w, &GameParams::ONES).unwrap());
        assert!(p.referee(edge(1), edge(1), &ones, &ones, &GameParams::ONES).is_err());
    }

    #[test]
    fn referee_reduces_to_original_game() {
        let p = pentagram();
        for x in EdgeId::all() {
            for y in EdgeId::all().into_iter().filter(|&y| y != x) {
                for zm in 0..16 {
                    for wm in 0..16 {
                        let (z, w) = (Assignment::from_mask(zm), Assignment::from_mask(wm));
                        let original = z.product() == e(x)
                            && w.product() == e(y)
                            && z.at_rank(order(x, y).unwrap()) == w.at_rank(order(y, x).unwrap());
                        assert_eq!(p.referee(x, y, &z, &w, &GameParams::ONES).unwrap(), original);
                    }
                }
            }
        }
    }

    #[test]
    fn violated_edges_examples() {
        let p = pentagram();
        assert_eq!(p.violated_edges(&[1; 10]).unwrap(), vec![edge(4)]);
        let mut lab = [1i8; 10];
        let v04 = p.intersection(edge(0), edge(4)).unwrap().vid;
        lab[v04] = -1;
        assert_eq!(p.violated_edges(&lab).unwrap(), vec![edge(0)]);
        assert!(p.violated_edges(&[1; 9]).is_err());
        assert!(p.violated_edges(&[0; 10]).is_err());
    }

    #[test]
    fn violated_edge_count_is_always_odd() {
        let p = pentagram();
        for mask in 0u32..1024 {
            let lab: Vec<i8> = (0..10).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            assert_eq!(p.violated_edges(&lab).unwrap().len() % 2, 1, "labeling {mask:#b}");
        }
    }

    #[test]
    fn params_serde() {
        let p: GameParams = serde_json::from_str("[1,-1,1,1,1,1]").unwrap();
        assert_eq!(p.beta(0), -1);
        assert!(serde_json::from_str::<GameParams>("[1,1]").is_err());
        assert!(serde_json::from_str::<GameParams>("[1,1,1,1,1,2]").is_err());
        assert_eq!(GameParams::all().count(), 64);
    }
}
