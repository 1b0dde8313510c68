use modsurf::spectral::residuals::{boundary_from_samples, c_s, psi_scale, BOUNDARY_STENCIL};
use modsurf::spectral::{
    boundary_residual, reconstruct_psi, refine_resonance, PeriodFunction, Psi, ResonanceResult,
    Tolerances, REFINE_DISCRETIZATION,
};
use modsurf::transfer::{gauss_matrix, SpectralParameter};
use num_complex::Complex64;

fn resonance(r0: f64, parity: i8) -> (ResonanceResult, PeriodFunction) {
    let r = refine_resonance(
        r0,
        parity,
        REFINE_DISCRETIZATION,
        0.01,
        Tolerances::default(),
    )
    .unwrap();
    let m = gauss_matrix(SpectralParameter::critical(r.r), REFINE_DISCRETIZATION).unwrap();
    (
        r,
        PeriodFunction::from_operator(m, f64::from(parity)).unwrap(),
    )
}

fn boundary_with_stencil(psi: &Psi, factor: f64) -> f64 {
    let mut samples = [(0.0, Complex64::default(), Complex64::default()); 3];
    for (slot, e) in samples.iter_mut().zip(BOUNDARY_STENCIL) {
        let e = e * factor;
        *slot = (e, c_s(psi, e).unwrap(), c_s(psi, -e).unwrap());
    }
    boundary_from_samples(&samples, psi_scale(psi).unwrap())
}

#[test]
fn boundary_fit_converges_at_first_two_resonances() {
    for (r0, parity) in [(9.5337, -1), (12.1730, -1)] {
        let (_, pf) = resonance(r0, parity);
        let psi = reconstruct_psi(&pf);
        let coarse = boundary_with_stencil(&psi, 1.0);
        let fine = boundary_with_stencil(&psi, 0.5);
        let finer = boundary_with_stencil(&psi, 0.25);
        assert!(coarse < 1e-2, "R0 = {r0}: {coarse}");
        // one-sided fit error shrinks with the stencil, as for a smooth c_S
        assert!(
            fine < coarse / 4.0 && finer < 1e-3,
            "R0 = {r0}: {coarse} {fine} {finer}"
        );
        let flipped = boundary_residual(&reconstruct_psi(&pf.with_flipped_parity())).unwrap();
        assert!(flipped > 10.0 * coarse, "R0 = {r0}: {flipped} vs {coarse}");
    }
}

#[test]
fn boundary_residual_is_finite_at_third_resonance() {
    let (r, _) = resonance(13.7797, 1);
    assert!(r.boundary_residual.is_finite());
    assert!(r.accepted);
}

#[test]
fn psi_is_continuous_at_one() {
    for (r0, parity) in [(9.5337, -1), (12.1730, -1), (13.7797, 1)] {
        let (_, pf) = resonance(r0, parity);
        let psi = reconstruct_psi(&pf);
        let scale = psi_scale(&psi).unwrap();
        let jump = (psi.eval(1.0).unwrap() - psi.eval(1.0 + 1e-12).unwrap()).norm();
        assert!(jump < 1e-7 * scale, "R0 = {r0}: {jump}");
    }
}

#[test]
fn three_term_identity_at_golden_point() {
    let (r, pf) = resonance(9.5337, -1);
    let psi = reconstruct_psi(&pf);
    let s = Complex64::new(0.5, r.r);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for t in [g, 1.0 + g, g / (1.0 + g)] {
        let lhs = psi.eval(t).unwrap();
        let rhs = psi.eval(t + 1.0).unwrap()
            + (-2.0 * s * (t + 1.0).ln()).exp() * psi.eval(t / (t + 1.0)).unwrap();
        assert!(
            (lhs - rhs).norm() < 1e-6 * psi_scale(&psi).unwrap(),
            "t = {t}"
        );
    }
}

#[test]
fn lambda_is_consistent() {
    for (r0, parity) in [(9.5337, -1), (12.1730, -1), (13.7797, 1)] {
        let (r, _) = resonance(r0, parity);
        assert!((r.lambda - (0.25 + r.r * r.r)).abs() < 1e-12);
        assert!(
            r.three_term_residual.is_finite()
                && r.cocycle_r1.is_finite()
                && r.cocycle_r2.is_finite()
        );
    }
}
