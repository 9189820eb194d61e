use super::state::{DensityMatrix, MeasurementRecord, Observable, Outcome, Unitary};
use crate::error::{Error, Result};
use crate::linalg::{qubits_for_dim, re, ComplexMatrix, ATOL, C64, STAT_TOL, ZERO};

/// Register composition; the left operand occupies the high-order qubits.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for DensityMatrix {
    fn tensor(&self, other: &Self) -> Self {
        DensityMatrix::from_trusted(self.matrix().kron(other.matrix()))
    }
}

impl Tensor for Unitary {
    fn tensor(&self, other: &Self) -> Self {
        Unitary::from_trusted(self.matrix().kron(other.matrix()))
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// U ρ U†
pub fn apply(u: &Unitary, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    let m = u.matrix().inner() * rho.matrix().inner() * u.matrix().inner().adjoint();
    Ok(DensityMatrix::from_trusted(ComplexMatrix::from_inner(m)))
}

/// G ρ G† for a single-qubit gate `gate` acting on `qubit`, without forming
/// the full-register operator.
pub fn apply_on_qubit(gate: &Unitary, qubit: usize, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if gate.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: gate.dim(),
        });
    }
    let n = rho.n_qubits();
    if qubit >= n {
        return Err(Error::QubitOutOfRange { index: qubit, n_qubits: n });
    }
    let d = rho.dim();
    let g = [
        gate.matrix().get(0, 0),
        gate.matrix().get(0, 1),
        gate.matrix().get(1, 0),
        gate.matrix().get(1, 1),
    ];
    let mask = 1usize << (n - 1 - qubit);
    let mut m = rho.matrix().to_row_major();
    // rows: m <- G m
    for lo in (0..d).filter(|i| i & mask == 0) {
        let hi = lo | mask;
        for c in 0..d {
            let (a, b) = (m[lo * d + c], m[hi * d + c]);
            m[lo * d + c] = g[0] * a + g[1] * b;
            m[hi * d + c] = g[2] * a + g[3] * b;
        }
    }
    // columns: m <- m G†
    for lo in (0..d).filter(|i| i & mask == 0) {
        let hi = lo | mask;
        for r in 0..d {
            let (a, b) = (m[r * d + lo], m[r * d + hi]);
            m[r * d + lo] = a * g[0].conj() + b * g[1].conj();
            m[r * d + hi] = a * g[2].conj() + b * g[3].conj();
        }
    }
    Ok(DensityMatrix::from_trusted(ComplexMatrix::from_row_major(d, d, &m)?))
}

/// D ρ D† for a diagonal unitary given by its diagonal entries.
pub fn apply_diagonal(phases: &[C64], rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d = rho.dim();
    if phases.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: phases.len(),
        });
    }
    if let Some(bad) = phases.iter().find(|p| (p.norm() - 1.0).abs() > ATOL) {
        return Err(Error::NotUnitary {
            deviation: (bad.norm() - 1.0).abs(),
        });
    }
    let mut m = rho.matrix().to_row_major();
    for r in 0..d {
        for c in 0..d {
            m[r * d + c] *= phases[r] * phases[c].conj();
        }
    }
    Ok(DensityMatrix::from_trusted(ComplexMatrix::from_row_major(d, d, &m)?))
}

/// Reduced state on the qubits in `keep`, listed in ascending order in the result.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if keep.is_empty() {
        return Err(Error::InvalidQubitSet("nothing to keep".into()));
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    if kept.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidQubitSet(format!("duplicate index in {keep:?}")));
    }
    if let Some(&bad) = kept.iter().find(|&&q| q >= n) {
        return Err(Error::QubitOutOfRange { index: bad, n_qubits: n });
    }
    if kept.len() == n {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
    let shift = |q: usize| n - 1 - q;
    // Scatter the bits of a sub-register index onto the chosen full-register positions.
    let scatter = |sub: usize, qubits: &[usize]| -> usize {
        qubits.iter().enumerate().fold(0, |acc, (pos, &q)| {
            let b = (sub >> (qubits.len() - 1 - pos)) & 1;
            acc | (b << shift(q))
        })
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let mut out = vec![ZERO; dk * dk];
    for i in 0..dk {
        let row_base = scatter(i, &kept);
        for j in 0..dk {
            let col_base = scatter(j, &kept);
            let mut acc = ZERO;
            for t in 0..dt {
                let e = scatter(t, &traced);
                acc += rho.matrix().get(row_base | e, col_base | e);
            }
            out[i * dk + j] = acc;
        }
    }
    Ok(DensityMatrix::from_trusted(ComplexMatrix::from_row_major(dk, dk, &out)?))
}

/// Projective measurement of a dichotomic observable, returning both branches
/// (+1 first) with their exact probabilities and collapsed states.
pub fn measure(obs: &Observable, rho: &DensityMatrix) -> Result<(MeasurementRecord, MeasurementRecord)> {
    if !obs.is_dichotomic() {
        return Err(Error::NotDichotomic { deviation: f64::NAN });
    }
    check_dims(obs.dim(), rho.dim())?;
    let branch = |outcome: Outcome| -> Result<MeasurementRecord> {
        let p = obs.projector(outcome);
        let projected = p.matmul(rho.matrix())?.matmul(&p)?;
        let probability = projected.trace().re.clamp(0.0, 1.0);
        let post_state = (probability > ATOL)
            .then(|| DensityMatrix::from_trusted(projected.scale(re(1.0 / probability))));
        Ok(MeasurementRecord {
            outcome,
            probability,
            post_state,
        })
    };
    Ok((branch(Outcome::Plus)?, branch(Outcome::Minus)?))
}

/// tr(O ρ)
pub fn expectation(obs: &Observable, rho: &DensityMatrix) -> Result<f64> {
    check_dims(obs.dim(), rho.dim())?;
    let value: C64 = (obs.matrix().inner() * rho.matrix().inner()).trace();
    if value.im.abs() > STAT_TOL {
        return Err(Error::ImaginaryExpectation { imag: value.im });
    }
    Ok(value.re)
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    qubits_for_dim(found).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, I};
    use crate::quantum::{controlled_phase, hadamard, on_qubit, u_theta};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn tensor_identities() {
        let i2 = Unitary::identity(1).unwrap();
        assert!(tensor(&i2, &i2).approx_eq(&Unitary::identity(2).unwrap(), 0.0));
        let p = tensor(&DensityMatrix::zero(), &DensityMatrix::one());
        assert!(p.approx_eq(&DensityMatrix::basis(2, 1).unwrap(), 0.0));
    }

    #[test]
    fn zz_on_01_gives_minus_one() {
        let zz = Observable::sigma_z().matrix().kron(Observable::sigma_z().matrix());
        // direct product with the |01⟩ column
        let v: Vec<C64> = (0..4).map(|r| zz.get(r, 1)).collect();
        assert_eq!(v[1], -ONE);
        let zz = Observable::new(zz, true).unwrap();
        let e = expectation(&zz, &DensityMatrix::basis(2, 1).unwrap()).unwrap();
        assert!((e + 1.0).abs() < ATOL);
    }

    #[test]
    fn apply_examples() {
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        assert!(apply(&Unitary::identity(1).unwrap(), &mixed).unwrap().approx_eq(&mixed, 0.0));
        for k in 0..20 {
            let th = 0.37 * k as f64;
            assert!(apply(&u_theta(th), &mixed).unwrap().approx_eq(&mixed, ATOL));
        }
        let flipped = apply(&u_theta(PI / 2.0), &DensityMatrix::zero()).unwrap();
        assert!(flipped.approx_eq(&DensityMatrix::one(), ATOL));
        assert!(apply(&Unitary::identity(2).unwrap(), &mixed).is_err());
    }

    #[test]
    fn partial_trace_examples() {
        let a = DensityMatrix::from_bloch([0.1, 0.2, 0.3]).unwrap();
        let b = DensityMatrix::plus();
        let ab = tensor(&a, &b);
        assert!(partial_trace(&ab, &[0]).unwrap().approx_eq(&a, ATOL));
        assert!(partial_trace(&ab, &[1]).unwrap().approx_eq(&b, ATOL));

        let s = FRAC_1_SQRT_2;
        let bell = DensityMatrix::pure(&[re(s), ZERO, ZERO, re(s)]).unwrap();
        let half = DensityMatrix::maximally_mixed(1).unwrap();
        assert!(partial_trace(&bell, &[0]).unwrap().approx_eq(&half, ATOL));
        assert!(partial_trace(&bell, &[1]).unwrap().approx_eq(&half, ATOL));
    }

    #[test]
    fn controlled_phase_with_plus_ancilla_dephases() {
        // Oracle: (|0⟩+|1⟩)/√2 ⊗ |+⟩ -> (|0+⟩ + |1−⟩)/√2, written out by hand.
        let h = 0.5;
        let psi = [re(h), re(h), re(h), re(-h)];
        let expected = DensityMatrix::pure(&psi).unwrap();
        let joint = tensor(&DensityMatrix::plus(), &DensityMatrix::plus());
        let after = apply(&controlled_phase(0, 1, 2).unwrap(), &joint).unwrap();
        assert!(after.approx_eq(&expected, ATOL));
        let sys = partial_trace(&after, &[0]).unwrap();
        let diag = ComplexMatrix::from_real(2, &[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(sys.matrix().approx_eq(&diag, ATOL));
    }

    #[test]
    fn partial_trace_errors() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        assert_eq!(partial_trace(&rho, &[1, 0]).unwrap(), rho);
    }

    #[test]
    fn partial_trace_keeps_middle_qubit() {
        let rho = tensor(
            &tensor(&DensityMatrix::zero(), &DensityMatrix::plus()),
            &DensityMatrix::one(),
        );
        assert!(partial_trace(&rho, &[1]).unwrap().approx_eq(&DensityMatrix::plus(), ATOL));
        let outer = partial_trace(&rho, &[0, 2]).unwrap();
        assert!(outer.approx_eq(&DensityMatrix::basis(2, 1).unwrap(), ATOL));
    }

    #[test]
    fn measure_examples() {
        let z = Observable::sigma_z();
        let (plus, minus) = measure(&z, &DensityMatrix::zero()).unwrap();
        assert_eq!(plus.probability, 1.0);
        assert!(plus.post_state.unwrap().approx_eq(&DensityMatrix::zero(), ATOL));
        assert_eq!(minus.probability, 0.0);
        assert!(minus.post_state.is_none());

        let (plus, minus) = measure(&z, &DensityMatrix::maximally_mixed(1).unwrap()).unwrap();
        assert!((plus.probability - 0.5).abs() < ATOL && (minus.probability - 0.5).abs() < ATOL);

        for k in 0..50 {
            let th = 0.13 * k as f64;
            let rho = apply(&u_theta(th), &DensityMatrix::zero()).unwrap();
            // U(θ)|0⟩ = cosθ|0⟩ + i sinθ|1⟩
            let p_plus = th.cos().powi(2);
            let (plus, _) = measure(&z, &rho).unwrap();
            assert!((plus.probability - p_plus).abs() < ATOL);
            let e = expectation(&z, &rho).unwrap();
            assert!((e - (2.0 * th).cos()).abs() < ATOL);
            assert!((e - (2.0 * plus.probability - 1.0)).abs() < ATOL);
        }
    }

    #[test]
    fn measure_rejects_non_dichotomic() {
        let m = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let obs = Observable::new(m, false).unwrap();
        assert!(matches!(
            measure(&obs, &DensityMatrix::zero()),
            Err(Error::NotDichotomic { .. })
        ));
    }

    #[test]
    fn expectation_flags_non_hermitian_product() {
        // a valid observable paired with a corrupted "state" built unchecked
        let bad = DensityMatrix::from_trusted(
            ComplexMatrix::from_row_major(2, 2, &[re(0.5), I, ZERO, re(0.5)]).unwrap(),
        );
        assert!(matches!(
            expectation(&Observable::sigma_x(), &bad),
            Err(Error::ImaginaryExpectation { .. })
        ));
    }

    #[test]
    fn local_application_matches_full_operator() {
        let rho = tensor(
            &tensor(&DensityMatrix::from_bloch([0.2, 0.5, -0.1]).unwrap(), &DensityMatrix::plus()),
            &DensityMatrix::from_bloch([-0.6, 0.0, 0.3]).unwrap(),
        );
        for q in 0..3 {
            for g in [u_theta(0.7), hadamard()] {
                let full = apply(&on_qubit(&g, q, 3).unwrap(), &rho).unwrap();
                let local = apply_on_qubit(&g, q, &rho).unwrap();
                assert!(full.approx_eq(&local, ATOL));
            }
        }
        let cz = controlled_phase(0, 2, 3).unwrap();
        let diag: Vec<C64> = (0..8).map(|i| cz.matrix().get(i, i)).collect();
        let full = apply(&cz, &rho).unwrap();
        assert!(full.approx_eq(&apply_diagonal(&diag, &rho).unwrap(), ATOL));
        assert!(apply_diagonal(&[ONE; 4], &rho).is_err());
        assert!(apply_on_qubit(&hadamard(), 3, &rho).is_err());
    }

    #[test]
    fn hadamard_prepares_plus() {
        let plus = apply(&hadamard(), &DensityMatrix::zero()).unwrap();
        assert!(plus.approx_eq(&DensityMatrix::plus(), ATOL));
        let h1 = on_qubit(&hadamard(), 1, 2).unwrap();
        let s = apply(&h1, &DensityMatrix::basis(2, 0).unwrap()).unwrap();
        assert!(s.approx_eq(&tensor(&DensityMatrix::zero(), &DensityMatrix::plus()), ATOL));
    }
}
