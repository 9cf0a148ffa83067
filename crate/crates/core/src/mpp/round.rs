//! The quantum strategy for one round of the generalized game: shared
//! `⊗_s |Φ_{α_s,β_s}⟩` on qubit pairs `(s, s+3)`, Alice on qubits 0..3 and
//! Bob on 3..6, each measuring `U(edge)`.

use rand::Rng;

use super::circuit::u_gate;
use super::BlockCode;
use crate::error::{Error, Result};
use crate::game::{e, order, pentagram, Assignment, EdgeId, GameParams};
use crate::gates::Gate;
use crate::pauli::{Pauli, PauliWord};
use crate::statevector::StateVector;
use crate::tableau::StabilizerState;

/// `CNOT·(H⊗I)` applied to `|(1-α)/2, (1-β)/2⟩` on qubits `(a, b)`.
pub fn prepare_phi_gates(alpha: i8, beta: i8, a: usize, b: usize) -> Vec<Gate> {
    let mut g = Vec::with_capacity(4);
    if alpha == -1 {
        g.push(Gate::X(a));
    }
    if beta == -1 {
        g.push(Gate::X(b));
    }
    g.push(Gate::H(a));
    g.push(Gate::Cnot(a, b));
    g
}

fn check_sign(v: i8) -> Result<()> {
    if v == 1 || v == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("expected ±1, got {v}")))
    }
}

/// `|Φ_{α,β}⟩`, stabilized by `α·XX` and `β·ZZ`.
pub fn prepare_phi(alpha: i8, beta: i8) -> Result<StabilizerState> {
    check_sign(alpha)?;
    check_sign(beta)?;
    let mut st = StabilizerState::new(2);
    st.apply_all(&prepare_phi_gates(alpha, beta, 0, 1));
    Ok(st)
}

pub fn prepare_phi_statevector(alpha: i8, beta: i8) -> Result<StateVector> {
    check_sign(alpha)?;
    check_sign(beta)?;
    let mut sv = StateVector::zero(2)?;
    for g in prepare_phi_gates(alpha, beta, 0, 1) {
        sv.apply(&g);
    }
    Ok(sv)
}

/// `⊗_s |Φ_{α_s,β_s}⟩` on pairs `(s, s+3)`.
pub fn shared_state(p: &GameParams) -> StabilizerState {
    let mut st = StabilizerState::new(6);
    for s in 0..3 {
        st.apply_all(&prepare_phi_gates(p.alpha(s), p.beta(s), s, s + 3));
    }
    st
}

fn measurement_gates(x: EdgeId, y: EdgeId) -> Vec<Gate> {
    let mut gates = u_gate(BlockCode::from_edge(x)).gates().to_vec();
    gates.extend(u_gate(BlockCode::from_edge(y)).gates().iter().map(|g| g.remap(&[3, 4, 5])));
    gates
}

/// Complete three measured values to a quadruple with product `e(s)`.
pub(crate) fn complete(v: [i8; 3], s: EdgeId) -> Assignment {
    Assignment::new([v[0], v[1], v[2], v[0] * v[1] * v[2] * e(s)]).expect("±1 values")
}

/// Play one round: Alice gets `x`, Bob gets `y`.
pub fn quantum_round<R: Rng + ?Sized>(
    x: EdgeId,
    y: EdgeId,
    p: &GameParams,
    rng: &mut R,
) -> Result<(Assignment, Assignment)> {
    if x == y {
        return Err(Error::InvalidPair(x.id(), y.id()));
    }
    let mut st = shared_state(p);
    st.apply_all(&measurement_gates(x, y));
    let bits: Vec<i8> = (0..6).map(|q| if st.measure(q, rng) { -1 } else { 1 }).collect();
    Ok((complete([bits[0], bits[1], bits[2]], x), complete([bits[3], bits[4], bits[5]], y)))
}

/// The Z-parity on the measured register that reads out rank `r` of `s`,
/// on qubits `offset..offset+3`, including the sign `e(s)` for rank 4.
fn rank_readout(s: EdgeId, r: usize, offset: usize) -> PauliWord {
    let mut w = PauliWord::identity(6);
    if r < 4 {
        w.set(offset + r - 1, Pauli::Z);
        w
    } else {
        for q in 0..3 {
            w.set(offset + q, Pauli::Z);
        }
        if e(s) == -1 {
            w.negated()
        } else {
            w
        }
    }
}

/// Certify the round without sampling: both completed quadruples have the
/// right products as operator identities, and the shared-vertex readout
/// parity is deterministic and equal to `L_{x,y}(p)`.
pub fn certify_round(x: EdgeId, y: EdgeId, p: &GameParams) -> Result<bool> {
    let pg = pentagram();
    let (ox, oy) = (order(x, y)?, order(y, x)?);
    for s in [x, y] {
        let obs = pg.edge_observables(s);
        let u = u_gate(BlockCode::from_edge(s));
        // U† (Z1 Z2 Z3) U · O4 must be e(s)·I
        let readout = u.z_image(0).mul(u.z_image(1))?.mul(u.z_image(2))?;
        let prod = readout.mul(&obs[3])?;
        let expected = if e(s) == 1 { PauliWord::identity(3) } else { PauliWord::identity(3).negated() };
        if prod != expected {
            return Ok(false);
        }
    }
    let mut st = shared_state(p);
    st.apply_all(&measurement_gates(x, y));
    let parity = rank_readout(x, ox, 0).mul(&rank_readout(y, oy, 3))?;
    Ok(st.expect(&parity)? == pg.l_value(x, y, p)?)
}
