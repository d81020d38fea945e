use num_complex::Complex64;
use qdamp_core::fock::{interior_residual, policy_margin, FockSpace};
use qdamp_core::squeeze::{
    bogoliubov_ccr_residual, bogoliubov_residual, dilation_vs_squeeze, group_law_residual,
    squeeze_operator, squeezed_vacuum,
};

/// Disentangled form of the squeezed vacuum:
/// `<2n|S(zeta)|0> = (cosh zeta)^(-1/2) (-tanh zeta)^n sqrt((2n)!) / (2^n n!)`.
/// Computed with a running product so no factorial is formed.
fn squeezed_vacuum_closed_form(zeta: f64, levels: usize) -> Vec<f64> {
    let mut out = vec![0.0; levels];
    let t = -zeta.tanh();
    let mut ratio = 1.0; // sqrt((2n)!) / (2^n n!)
    for n in 0..(levels + 1) / 2 {
        if n > 0 {
            let k = n as f64;
            ratio *= ((2.0 * k) * (2.0 * k - 1.0)).sqrt() / (2.0 * k);
        }
        out[2 * n] = zeta.cosh().powf(-0.5) * t.powi(n as i32) * ratio;
    }
    out
}

#[test]
fn closed_form_oracle_agrees_with_dense_exponential() {
    let space = FockSpace::new(64).unwrap();
    for zeta in [-1.0, -0.3, 0.5, 1.0] {
        let v = squeezed_vacuum(space, zeta).unwrap();
        let oracle = squeezed_vacuum_closed_form(zeta, 64);
        // Low levels are insensitive to truncation at D = 64.
        for n in 0..=16 {
            let err = (v.amplitude(n) - Complex64::new(oracle[n], 0.0)).norm();
            assert!(err < 1e-11, "zeta {zeta} n {n}: {err:e}");
        }
    }
}

#[test]
fn vacuum_overlap_at_unit_squeeze() {
    let s = squeeze_operator(FockSpace::new(64).unwrap(), 1.0).unwrap();
    let expected = 1.0f64.cosh().powf(-0.5);
    assert!((s.get(0, 0).re - expected).abs() < 1e-13);
    assert!((s.get(0, 0).re - 0.805_018).abs() < 1e-6);
    assert_eq!(s.get(1, 0), Complex64::new(0.0, 0.0));
}

#[test]
fn dilation_matches_squeeze() {
    let space = FockSpace::new(32).unwrap();
    for zeta in [0.5, -0.5] {
        let r = dilation_vs_squeeze(space, zeta, 8).unwrap();
        assert!(r <= 1e-9, "zeta {zeta}: {r:e}");
    }
}

#[test]
fn bogoliubov_at_d48() {
    let space = FockSpace::new(48).unwrap();
    let zeta = 0.3;
    let margin = (4.0 * zeta as f64).ceil() as usize + 4;
    let r = bogoliubov_residual(space, zeta, margin).unwrap();
    assert!(r <= 1e-8, "{r:e}");
    assert!(bogoliubov_ccr_residual(space, zeta, 1).unwrap() <= 1e-8);
}

#[test]
fn unitarity_over_range() {
    for d in [4, 16, 64] {
        let space = FockSpace::new(d).unwrap();
        for zeta in [-2.0, -0.7, 0.0, 1.3, 2.0] {
            let s = squeeze_operator(space, zeta).unwrap();
            let r = interior_residual(&(&s.adjoint() * &s), &space.identity(), 0).unwrap();
            assert!(r <= 1e-10, "D {d} zeta {zeta}: {r:e}");
        }
    }
}

#[test]
fn one_parameter_group_law() {
    let space = FockSpace::new(32).unwrap();
    for (z1, z2) in [(0.5, -0.5), (0.25, 0.5), (-0.4, -0.1)] {
        let margin = policy_margin(z1 + z2, 2);
        let r = group_law_residual(space, z1, z2, margin).unwrap();
        assert!(r <= 1e-8, "{z1} {z2}: {r:e}");
    }
}
