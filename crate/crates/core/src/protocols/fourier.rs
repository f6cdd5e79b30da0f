use num_complex::Complex;

use crate::clifford::{fourier_square, Gate, GateSequence};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::sim::{cis, dense_unitary, gate_matrix, Circuit, DenseMatrix};

use super::ProtocolReport;

const TOL: f64 = 1e-9;

/// `|G|^{-1/2} Σ_h ξ(h)`.
pub fn gauss_sum(xi: &QuadraticForm) -> Complex<f64> {
    let g = xi.group();
    let sum: Complex<f64> = xi.table().values().iter().map(|&p| cis::<f64>(p)).sum();
    sum / (g.size() as f64).sqrt()
}

/// `(F_{i_ξ} S_ξ)³` is the normalized Gauss sum times the identity, and
/// `F_{i_ξ}²` is the negation gate.
pub fn check_triple_identity(xi: &QuadraticForm, cap: usize) -> Result<ProtocolReport> {
    let g = xi.group();
    let i = xi.i_xi_map()?;
    let mut report = ProtocolReport::new("triple-identity", g);
    let f = gate_matrix::<f64>(&Gate::Fourier(i.clone()), g, cap)?;
    let s = gate_matrix::<f64>(&Gate::Quadratic(xi.clone()), g, cap)?;
    let fs = f.mul(&s);
    let cube = fs.mul(&fs).mul(&fs);
    let gauss = gauss_sum(xi);
    report.detail("gauss_sum", format!("{:.12}{:+.12}i", gauss.re, gauss.im));
    match cube.as_scalar(TOL) {
        Some(c) => {
            report.note_phase(c);
            report.check(true, String::new);
            report.check((c - gauss).norm() <= TOL, || format!("scalar {c} differs from the Gauss sum {gauss}"));
            report.check((c.norm() - 1.0).abs() <= TOL, || format!("scalar {c} is not unimodular"));
        }
        None => report.check(false, || "(F S)^3 is not scalar".into()),
    }
    let neg = gate_matrix::<f64>(&Gate::Automorphism(HomMatrix::scalar(g, -1)), g, cap)?;
    report.check(f.mul(&f).approx_eq(&neg, TOL), || "F^2 is not the negation gate".into());

    // The same statements on tableaux, exactly.
    let pair = [Gate::Quadratic(xi.clone()), Gate::Fourier(i.clone())];
    let word = GateSequence::new(g, (0..3).flat_map(|_| pair.clone()).collect())?;
    report.check(word.tableau()?.is_identity(), || "(F S)^3 tableau is not the identity".into());
    report.check(fourier_square(&i)? == HomMatrix::scalar(g, -1), || "F^2 is not symbolically the negation".into());
    Ok(report)
}

/// The five-gate circuit on one slot of `G × H`: `S, F, S, F, S` followed by
/// the automorphism undoing `F_{i_h}²` on the `H` factors.
pub fn build_split_fourier(xi: &QuadraticForm, h: &Group, i_h: &HomMatrix) -> Result<Circuit> {
    let g = xi.group();
    if i_h.source() != h || i_h.target() != h || !i_h.is_automorphism() {
        return Err(Error::InvalidHom("the H isomorphism must be an automorphism of H".into()));
    }
    let gh = g.product(h);
    let s = Gate::Quadratic(xi.direct_sum(&QuadraticForm::zero(h)));
    let f = Gate::Fourier(xi.i_xi_map()?.direct_sum(i_h));
    let fix = HomMatrix::identity(g).direct_sum(&fourier_square(i_h)?.invert()?);
    let mut c = Circuit::new(&gh, 1)?;
    c.gate(s.clone(), &[0])?
        .gate(f.clone(), &[0])?
        .gate(s.clone(), &[0])?
        .gate(f, &[0])?
        .gate(s, &[0])?
        .gate(Gate::Automorphism(fix), &[0])?;
    Ok(c)
}

/// The circuit equals `F_{−i_ξ} ⊗ I` up to a global phase.
pub fn check_split_fourier(xi: &QuadraticForm, h: &Group, i_h: &HomMatrix, cap: usize) -> Result<ProtocolReport> {
    let g = xi.group();
    let c = build_split_fourier(xi, h, i_h)?;
    let mut report = ProtocolReport::new("split-fourier", &g.product(h));
    let u = dense_unitary::<f64>(&c, cap)?;
    let target = gate_matrix::<f64>(&Gate::Fourier(xi.i_xi_map()?.neg()), g, cap)?.kron(&DenseMatrix::identity(h.size()));
    match u.phase_relative_to(&target, TOL) {
        Some(z) if (z.norm() - 1.0).abs() <= TOL => {
            report.note_phase(z);
            report.check(true, String::new);
        }
        _ => report.check(false, || "circuit differs from F ⊗ I".into()),
    }
    report.detail("h_iso", format!("{:?}", i_h.entries()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_gauss_sum() {
        let z2 = Group::new(&[2]).unwrap();
        let xi = QuadraticForm::new(&z2, &[1], &[], &[0]).unwrap();
        let r = check_triple_identity(&xi, 64).unwrap();
        assert!(r.success(), "{:?}", r.failures);
        let w = Complex::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!((gauss_sum(&xi) - w).norm() < 1e-12);
    }

    #[test]
    fn split_fourier_qubits() {
        let z2 = Group::new(&[2]).unwrap();
        let xi = QuadraticForm::new(&z2, &[1], &[], &[0]).unwrap();
        let r = check_split_fourier(&xi, &z2, &HomMatrix::identity(&z2), 64).unwrap();
        assert!(r.success(), "{:?}", r.failures);
    }
}
