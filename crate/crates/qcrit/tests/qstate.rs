mod common;

use approx::assert_abs_diff_eq;
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use qcrit::linalg::{c64, eig_hermitian, kron, matrix_sqrt_psd, re, sigma_x, CMat};
use qcrit::qstate::*;
use qcrit::Error;

fn ket(amps: &[f64]) -> PureState {
    PureState::from_real(amps).unwrap()
}

fn entropy_bits(eigs: &[f64]) -> f64 {
    eigs.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln() / core::f64::consts::LN_2).sum()
}

#[test]
fn eig_hermitian_trivial_spectra() {
    let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![re(2.0), re(1.0)]));
    assert_eq!(eig_hermitian(&d).unwrap().eigenvalues, vec![1.0, 2.0]);
    let s = eig_hermitian(&sigma_x()).unwrap();
    assert_abs_diff_eq!(s.eigenvalues[0], -1.0, epsilon = 1e-14);
    assert_abs_diff_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-14);
}

#[test]
fn eig_hermitian_reconstructs_random_matrices() {
    let mut r = rng(1);
    for _ in 0..20 {
        let h = random_hermitian(&mut r, 6);
        let s = eig_hermitian(&h).unwrap();
        assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!(max_diff(&s.reconstruct(), &h) < 1e-10);
        let v = &s.eigenvectors;
        assert!(max_diff(&(v.adjoint() * v), &CMat::identity(6, 6)) < 1e-10);
    }
}

#[test]
fn eig_hermitian_rejects_non_hermitian() {
    let m = CMat::from_row_slice(2, 2, &[re(1.0), re(1.0), re(0.0), re(1.0)]);
    assert!(matches!(eig_hermitian(&m), Err(Error::NonHermitian { .. })));
}

#[test]
fn partial_trace_examples() {
    let zero = ket(&[1.0, 0.0, 0.0, 0.0]).density();
    let a = partial_trace(&zero, &[2, 2], &[0]).unwrap();
    assert!(max_diff(a.matrix(), &CMat::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), re(0.0)])) < 1e-15);

    let bell = named_state(NamedState::Bell).unwrap().density();
    let a = partial_trace(&bell, &[2, 2], &[0]).unwrap();
    assert!(max_diff(a.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);

    assert!(matches!(partial_trace(&bell, &[2, 3], &[0]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn partial_trace_matches_direct_index_sum() {
    let mut r = rng(2);
    for _ in 0..10 {
        let rho = random_density(&mut r, 12);
        let kept = partial_trace(&rho, &[2, 3, 2], &[0, 2]).unwrap();
        let m = rho.matrix();
        for a in 0..2 {
            for c in 0..2 {
                for a2 in 0..2 {
                    for c2 in 0..2 {
                        let mut s = Complex64::new(0.0, 0.0);
                        for b in 0..3 {
                            s += m[(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2)];
                        }
                        assert!((kept.get(a * 2 + c, a2 * 2 + c2) - s).norm() < 1e-14);
                    }
                }
            }
        }
        let ra = random_density(&mut r, 2);
        let rb = random_density(&mut r, 2);
        let back = partial_trace(&ra.tensor(&rb), &[2, 2], &[0]).unwrap();
        assert!(max_diff(back.matrix(), ra.matrix()) < 1e-14);
    }
}

#[test]
fn matrix_sqrt_examples() {
    let half = DensityMatrix::maximally_mixed(2);
    let s = matrix_sqrt_psd(half.matrix(), CLAMP_TOL).unwrap();
    assert!(max_diff(&s, &(CMat::identity(2, 2) * re(core::f64::consts::FRAC_1_SQRT_2))) < 1e-14);
    let p = ket(&[1.0, 0.0]).density();
    assert!(max_diff(&matrix_sqrt_psd(p.matrix(), CLAMP_TOL).unwrap(), p.matrix()) < 1e-14);
    let mut r = rng(3);
    for _ in 0..20 {
        let rho = random_density(&mut r, 4);
        let s = matrix_sqrt_psd(rho.matrix(), CLAMP_TOL).unwrap();
        assert!(max_diff(&(&s * &s), rho.matrix()) < 1e-9);
    }
    let bad = CMat::from_row_slice(2, 2, &[re(1.1), re(0.0), re(0.0), re(-0.1)]);
    assert!(matches!(matrix_sqrt_psd(&bad, CLAMP_TOL), Err(Error::NegativeEigenvalue { .. })));
}

#[test]
fn shannon_entropy_examples() {
    assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
    assert_abs_diff_eq!(shannon_entropy(&[0.5, 0.5]).unwrap(), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(shannon_entropy(&[0.25; 4]).unwrap(), 2.0, epsilon = 1e-15);
    assert!(shannon_entropy(&[0.5, 0.4]).is_err());
    assert!(shannon_entropy(&[1.5, -0.5]).is_err());
}

#[test]
fn von_neumann_examples() {
    assert_abs_diff_eq!(von_neumann_entropy(&ket(&[0.6, 0.8]).density()), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(von_neumann_entropy(&DensityMatrix::maximally_mixed(2)), 1.0, epsilon = 1e-14);
    // ρ = [[3/4, 1/4], [1/4, 1/4]] has eigenvalues 1/2 ± √2/4
    let rho = named_state(NamedState::WernerMix(0.5)).unwrap().density();
    let l = [0.5 + 2f64.sqrt() / 4.0, 0.5 - 2f64.sqrt() / 4.0];
    let oracle = entropy_bits(&l);
    assert_abs_diff_eq!(von_neumann_entropy(&rho), oracle, epsilon = 1e-12);
    assert_abs_diff_eq!(oracle, 0.600_876_036_692_856, epsilon = 1e-12);
}

#[test]
fn qjsd_examples() {
    let mut r = rng(4);
    let a = random_density(&mut r, 2);
    assert_abs_diff_eq!(qjsd(&a, &a).unwrap(), 0.0, epsilon = 1e-12);
    let zero = ket(&[1.0, 0.0]).density();
    let one = ket(&[0.0, 1.0]).density();
    assert_abs_diff_eq!(qjsd(&zero, &one).unwrap(), 1.0, epsilon = 1e-12);
    for _ in 0..20 {
        let a = random_density(&mut r, 2);
        let b = random_density(&mut r, 2);
        let mid = a.mix(&b, 0.5).unwrap();
        let oracle = entropy_bits(&mid.eigenvalues()) - 0.5 * entropy_bits(&a.eigenvalues()) - 0.5 * entropy_bits(&b.eigenvalues());
        assert_abs_diff_eq!(qjsd(&a, &b).unwrap(), oracle, epsilon = 1e-10);
        assert_abs_diff_eq!(qjsd(&a, &b).unwrap(), qjsd(&b, &a).unwrap(), epsilon = 1e-12);
    }
}

#[test]
fn mutual_information_examples() {
    let mut r = rng(5);
    let prod = random_density(&mut r, 2).tensor(&random_density(&mut r, 2));
    assert_abs_diff_eq!(mutual_information(&prod, [2, 2]).unwrap(), 0.0, epsilon = 1e-10);
    let bell = named_state(NamedState::Bell).unwrap().density();
    assert_abs_diff_eq!(mutual_information(&bell, [2, 2]).unwrap(), 2.0, epsilon = 1e-10);
    // Werner spectrum: (1+3p)/4 once and (1-p)/4 three times; marginals are I/2
    let p = 0.5;
    let w = named_state(NamedState::Werner(p)).unwrap().density();
    let l = [(1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0];
    assert_abs_diff_eq!(mutual_information(&w, [2, 2]).unwrap(), 2.0 - entropy_bits(&l), epsilon = 1e-10);
}

#[test]
fn dephase_examples() {
    let plus = named_state(NamedState::Plus).unwrap().density();
    assert!(max_diff(dephase(&plus).matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
    let mut r = rng(6);
    let rho = random_density(&mut r, 4);
    let d = dephase(&rho);
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { rho.get(i, i) } else { Complex64::new(0.0, 0.0) };
            assert_eq!(d.get(i, j), want);
        }
    }
    let dd = dephase(&d);
    assert!(max_diff(dd.matrix(), d.matrix()) == 0.0);
}

#[test]
fn named_state_examples() {
    let w0 = named_state(NamedState::Werner(0.0)).unwrap().density();
    assert!(max_diff(w0.matrix(), DensityMatrix::maximally_mixed(4).matrix()) < 1e-15);
    let w1 = named_state(NamedState::Werner(1.0)).unwrap().density();
    let singlet = ket(&[0.0, 1.0, -1.0, 0.0].map(|x| x * core::f64::consts::FRAC_1_SQRT_2)).density();
    assert!(max_diff(w1.matrix(), singlet.matrix()) < 1e-15);
    let ghz = match named_state(NamedState::Ghz(3)).unwrap() {
        State::Pure(p) => p,
        State::Mixed(_) => panic!("GHZ is pure"),
    };
    for (i, a) in ghz.amplitudes().iter().enumerate() {
        let want = if i == 0 || i == 7 { core::f64::consts::FRAC_1_SQRT_2 } else { 0.0 };
        assert_abs_diff_eq!(a.re, want, epsilon = 1e-15);
    }
    assert!(named_state(NamedState::Werner(1.2)).is_err());
    assert!(named_state(NamedState::WernerMix(-0.1)).is_err());
    for sign in [1, -1] {
        let f = named_state(NamedState::FsbPair(sign)).unwrap().density();
        assert_abs_diff_eq!(f.get(0, 1).re, 0.5 * sign as f64, epsilon = 1e-15);
    }
}

#[test]
fn density_matrix_validation() {
    let bad_trace = CMat::identity(2, 2);
    assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::BadTrace { .. })));
    let non_herm = CMat::from_row_slice(2, 2, &[re(0.5), re(0.1), re(0.0), re(0.5)]);
    assert!(matches!(DensityMatrix::new(non_herm), Err(Error::NonHermitian { .. })));
    let neg = CMat::from_row_slice(2, 2, &[re(1.2), re(0.0), re(0.0), re(-0.2)]);
    assert!(matches!(DensityMatrix::new(neg), Err(Error::NegativeEigenvalue { .. })));
    let tiny = CMat::from_row_slice(2, 2, &[re(1.0 + 1e-11), re(0.0), re(0.0), re(-1e-11)]);
    assert!(DensityMatrix::new(tiny).is_ok());
    assert!(PureState::new(nalgebra::DVector::from_vec(vec![c64(1.0, 0.0), c64(0.1, 0.0)])).is_err());
    let l = DensityMatrix::maximally_mixed(2).with_label("mixed");
    assert_eq!(l.label(), Some("mixed"));
}

#[test]
fn entropy_unitary_invariance_and_subadditivity() {
    let mut r = rng(7);
    for _ in 0..50 {
        let rho = random_density(&mut r, 4);
        let u = random_unitary(&mut r, 4);
        assert_abs_diff_eq!(von_neumann_entropy(&rho.conjugate_by(&u)), von_neumann_entropy(&rho), epsilon = 1e-10);
        let a = partial_trace(&rho, &[2, 2], &[0]).unwrap();
        let b = partial_trace(&rho, &[2, 2], &[1]).unwrap();
        assert!(von_neumann_entropy(&rho) <= von_neumann_entropy(&a) + von_neumann_entropy(&b) + 1e-12);
    }
}

#[test]
fn kron_of_pure_states_is_pure() {
    let a = ket(&[0.6, 0.8]).density();
    let b = ket(&[1.0, 0.0]).density();
    let ab = kron(a.matrix(), b.matrix());
    assert!(max_diff(&ab, a.tensor(&b).matrix()) < 1e-15);
    assert_abs_diff_eq!(von_neumann_entropy(&a.tensor(&b)), 0.0, epsilon = 1e-12);
}

proptest! {
    #[test]
    fn shannon_entropy_is_bounded(raw in proptest::collection::vec(0.0f64..1.0, 1..12)) {
        let s: f64 = raw.iter().sum();
        prop_assume!(s > 1e-6);
        let p: Vec<f64> = raw.iter().map(|x| x / s).collect();
        let h = shannon_entropy(&p).unwrap();
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (p.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn qubit_states_respect_invariants(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let n = (x * x + y * y + z * z).sqrt();
        prop_assume!(n <= 1.0);
        let m = CMat::from_row_slice(2, 2, &[re(0.5 * (1.0 + z)), c64(0.5 * x, -0.5 * y), c64(0.5 * x, 0.5 * y), re(0.5 * (1.0 - z))]);
        let rho = DensityMatrix::new(m).unwrap();
        let s = von_neumann_entropy(&rho);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&s));
        let sq = matrix_sqrt_psd(rho.matrix(), CLAMP_TOL).unwrap();
        prop_assert!(max_diff(&(&sq * &sq), rho.matrix()) < 1e-9);
        let plus = named_state(NamedState::Plus).unwrap().density();
        let j = qjsd(&rho, &plus).unwrap();
        prop_assert!((0.0..=1.0).contains(&j));
    }
}
