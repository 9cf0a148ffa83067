use super::circuit::build_mpp_circuit;
use super::round::complete;
use super::{MppInput, MppOutput, SubsetIndex};
use crate::error::{Error, Result};
use crate::game::{l_for_observable, order, pentagram, GameParams};
use crate::tableau::{Branch, StabilizerState};

/// Parameters produced by the Bell measurements between blocks `k` and `l`:
/// `α_i = ∏_{j=k}^{l-1} w_j^i`, `β_i = ∏_{j=k}^{l-1} z_{j+1}^i`.
pub fn extract_params(z: &MppOutput, k: usize, l: usize) -> Result<GameParams> {
    let idx = SubsetIndex::new(k, l)?;
    if idx.l > z.n {
        return Err(Error::InvalidInput(format!("l={l} exceeds n={}", z.n)));
    }
    let mut alpha = [1i8; 3];
    let mut beta = [1i8; 3];
    for j in k..l {
        let (w, zn) = (z.w(j), z.z(j + 1));
        for i in 0..3 {
            alpha[i] *= w[i];
            beta[i] *= zn[i];
        }
    }
    GameParams::from_alpha_beta(alpha, beta)
}

/// The game relation between `z_k` and `w_l` for `X ∈ S_{k,l}`, with both
/// quadruples completed by `z⁴ = z¹z²z³e(x_k)`.
///
/// When `x_k = y_l` there is no single shared vertex; the circuit then
/// correlates every vertex of the edge, and all four ranks are checked.
pub fn verify_game_relation(x: &MppInput, z: &MppOutput) -> Result<bool> {
    if x.n != z.n {
        return Err(Error::SizeMismatch(x.n, z.n));
    }
    let (idx, xk, yl) = x.instance_data()?;
    let params = extract_params(z, idx.k, idx.l)?;
    let za = complete(z.z(idx.k), xk);
    let wa = complete(z.w(idx.l), yl);
    let pg = pentagram();
    if xk == yl {
        let ok = pg
            .edge_vertices(xk)
            .iter()
            .enumerate()
            .all(|(r, v)| za.at_rank(r + 1) * wa.at_rank(r + 1) == l_for_observable(&v.observable, &params));
        return Ok(ok);
    }
    Ok(za.at_rank(order(xk, yl)?) * wa.at_rank(order(yl, xk)?) == pg.l_value(xk, yl, &params)?)
}

/// Whether `z` has nonzero probability for input `x`, by postselecting every
/// output bit on the stabilizer backend.
pub fn verify_support(x: &MppInput, z: &MppOutput) -> Result<bool> {
    if x.n != z.n {
        return Err(Error::SizeMismatch(x.n, z.n));
    }
    let c = build_mpp_circuit(x);
    let mut st = StabilizerState::new(c.num_qubits());
    st.apply_all(&c.gates);
    for (q, bit) in c.qubits_from_output(z).into_iter().enumerate() {
        if st.postselect(q, bit) == Branch::Impossible {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::EdgeId;
    use crate::mpp::{output_distribution, run_mpp, sample_s, sample_skl, Backend};
    use crate::rng::stream;

    #[test]
    fn params_from_outputs() {
        let mut z = MppOutput::zeros(4);
        assert_eq!(extract_params(&z, 1, 4).unwrap(), GameParams::ONES);
        z.set_w_bit(2, 1, true);
        z.set_z_bit(3, 3, true);
        // l = k + 1: α = w_k, β = z_{k+1}
        assert_eq!(extract_params(&z, 2, 3).unwrap().values(), [-1, 1, 1, 1, 1, -1]);
        assert_eq!(extract_params(&z, 1, 2).unwrap(), GameParams::ONES);
        assert_eq!(extract_params(&z, 1, 4).unwrap().values(), [-1, 1, 1, 1, 1, -1]);
        assert!(extract_params(&z, 3, 3).is_err());
        assert!(extract_params(&z, 3, 5).is_err());
    }

    #[test]
    fn sampled_outputs_satisfy_both_verifiers() {
        let mut rng = stream(5, 0);
        for n in [2, 3, 8] {
            for _ in 0..40 {
                let x = sample_s(n, &mut rng).unwrap();
                let z = run_mpp(&x, Backend::Stabilizer, &mut rng).unwrap();
                assert!(verify_game_relation(&x, &z).unwrap(), "{} -> {}", x.to_bitstring(), z.to_bitstring());
                assert!(verify_support(&x, &z).unwrap());
            }
        }
    }

    #[test]
    fn long_chain_relation() {
        let mut rng = stream(6, 0);
        let idx = SubsetIndex::new(2, 7).unwrap();
        for _ in 0..20 {
            let x = sample_skl(8, idx, &mut rng).unwrap();
            let z = run_mpp(&x, Backend::Stabilizer, &mut rng).unwrap();
            assert!(verify_game_relation(&x, &z).unwrap());
        }
    }

    #[test]
    fn flipping_the_relation_bit_breaks_both() {
        let mut rng = stream(8, 0);
        let idx = SubsetIndex::new(1, 2).unwrap();
        let (xk, yl) = (EdgeId::new(0).unwrap(), EdgeId::new(2).unwrap());
        let x = MppInput::instance(2, idx, xk, yl).unwrap();
        let z = run_mpp(&x, Backend::Stabilizer, &mut rng).unwrap();
        let rank = order(xk, yl).unwrap();
        assert!(rank < 4);
        let mut bad = z.clone();
        bad.set_z_bit(1, rank, !z.z_bits(1)[rank - 1]);
        assert!(!verify_game_relation(&x, &bad).unwrap());
        assert!(!verify_support(&x, &bad).unwrap());
    }

    #[test]
    fn inputs_outside_s_are_rejected() {
        let x = MppInput::new(vec!["000".parse().unwrap(); 2], vec!["001".parse().unwrap(); 2]).unwrap();
        assert!(matches!(verify_game_relation(&x, &MppOutput::zeros(2)), Err(Error::NotInInstanceSet(_))));
        assert!(verify_support(&x, &MppOutput::zeros(3)).is_err());
    }

    #[test]
    fn n2_support_matches_statevector_and_relation() {
        for xv in 0..5u8 {
            for yv in 0..5u8 {
                let x = MppInput::instance(2, SubsetIndex::new(1, 2).unwrap(), EdgeId::new(xv).unwrap(), EdgeId::new(yv).unwrap())
                    .unwrap();
                let dist = output_distribution(&x).unwrap();
                for z in dist.keys() {
                    assert!(verify_game_relation(&x, z).unwrap());
                }
                // every one of the 4096 strings: support membership agrees
                for idx in 0u32..1 << 12 {
                    let bits: Vec<bool> = (0..12).map(|i| idx >> i & 1 == 1).collect();
                    let z = MppOutput::from_packed(bits).unwrap();
                    assert_eq!(verify_support(&x, &z).unwrap(), dist.contains_key(&z));
                }
            }
        }
    }
}
