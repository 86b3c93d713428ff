use causalnet::algebra::{c, embed, identity, kron, Matrix, Pauli};
use causalnet::protocols::{
    fermi_deviation_curve, fermi_two_atom, ground_pair, operator_support, sorkin_control_gap,
    sorkin_run, sorkin_signaling_gap, trace_distance, BrickWallCircuit, FermiSetup,
    O2Measurement, SorkinSetup,
};
use rayon::prelude::*;

/// Partial trace of a dense density matrix down to sites `lo..=hi`.
fn dense_reduce(rho: &Matrix, n: usize, lo: usize, hi: usize) -> Matrix {
    let k = hi - lo + 1;
    let right = n - hi - 1;
    let dw = 1 << k;
    let mut out = Matrix::zeros(dw, dw);
    for l in 0..1usize << lo {
        for r in 0..1usize << right {
            for i in 0..dw {
                for j in 0..dw {
                    let a = (l << (k + right)) | (i << right) | r;
                    let b = (l << (k + right)) | (j << right) | r;
                    out[(i, j)] += rho[(a, b)];
                }
            }
        }
    }
    out
}

#[test]
fn fermi_curve_matches_density_matrix_oracle() {
    let n = 6;
    let setup = FermiSetup::new(n, 1, 4, 0).unwrap();
    let circ = BrickWallCircuit::haar(n, 6, 77).unwrap();
    let curve = fermi_deviation_curve(&setup, &circ, 6).unwrap();
    let d = 1 << n;
    let mut rho0 = Matrix::zeros(d, d);
    rho0[(0, 0)] = c(1.0, 0.0);
    let x = embed(n, 4, &Pauli::X.matrix());
    let rho1 = &x * &rho0 * &x;
    for (t, dev) in curve.iter().enumerate() {
        let u = circ.unitary(t);
        let a = dense_reduce(&(&u * &rho0 * u.adjoint()), n, 1, 1);
        let b = dense_reduce(&(&u * &rho1 * u.adjoint()), n, 1, 1);
        assert!((trace_distance(&a, &b) - dev).abs() < 1e-12, "t={t}");
    }
}

#[test]
fn fermi_silence_before_arrival_across_seeds() {
    let setup = FermiSetup::new(10, 2, 8, 0).unwrap();
    let r = setup.distance();
    let worst = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let circ = BrickWallCircuit::haar(10, r - 1, seed).unwrap();
            fermi_deviation_curve(&setup, &circ, r - 1)
                .unwrap()
                .into_iter()
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    assert!(worst <= 1e-12, "{worst:e}");
}

#[test]
fn fermi_signal_arrives_after_distance() {
    let setup = FermiSetup::new(10, 2, 8, 0).unwrap();
    let circ = BrickWallCircuit::haar(10, 9, 2024).unwrap();
    assert!(fermi_two_atom(&setup, &circ, 3).unwrap() <= 1e-12);
    let curve = fermi_deviation_curve(&setup, &circ, 9).unwrap();
    assert!(curve[7..].iter().any(|d| *d > 1e-3), "{curve:?}");
}

#[test]
fn wider_windows_hear_earlier() {
    let setup = FermiSetup::new(10, 3, 8, 1).unwrap();
    let circ = BrickWallCircuit::haar(10, 8, 5).unwrap();
    let curve = fermi_deviation_curve(&setup, &circ, 8).unwrap();
    // R − w = 4
    assert!(curve[..4].iter().all(|d| *d <= 1e-12));
}

#[test]
fn identity_gates_never_transmit() {
    let setup = FermiSetup::new(8, 1, 6, 0).unwrap();
    let circ = BrickWallCircuit::from_fn(8, 10, |_, _| identity(4)).unwrap();
    let curve = fermi_deviation_curve(&setup, &circ, 10).unwrap();
    assert!(curve.iter().all(|d| *d == 0.0));
}

#[test]
fn heisenberg_support_bounded_by_lightcone() {
    let n = 6;
    for seed in 0..10u64 {
        let circ = BrickWallCircuit::haar(n, 4, seed).unwrap();
        for t in 0..=4 {
            let u = circ.unitary(t);
            for site in 0..n {
                let op = embed(n, site, &Pauli::Y.matrix());
                let ev = u.adjoint() * op * &u;
                let (lo, hi) = circ.lightcone(site, t);
                let sup = operator_support(n, &ev, 1e-10);
                assert!(sup.iter().all(|s| (lo..=hi).contains(s)), "seed {seed}, t {t}, site {site}: {sup:?}");
            }
        }
    }
}

/// Four-by-four recomputation of the canonical protocol from explicit kets.
#[test]
fn sorkin_matches_hand_oracle() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi = Matrix::from_column_slice(4, 1, &[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
    let p = &phi * phi.adjoint();
    let q = identity(4) - &p;
    let rho = ground_pair();
    let kicked = {
        let x = kron(&Pauli::X.matrix(), &identity(2));
        &x * rho.rho() * &x
    };
    let z1 = kron(&identity(2), &Pauli::Z.matrix());
    let mean = |r: &Matrix| {
        let m = &p * r * &p + &q * r * &q;
        (m * &z1).trace().re
    };
    // P(+1) = (1 + ⟨Z⟩)/2
    let expect_gap = ((1.0 + mean(&kicked)) / 2.0 - (1.0 + mean(rho.rho())) / 2.0).abs();
    let gap = sorkin_signaling_gap(&SorkinSetup::canonical(), &rho).unwrap();
    assert!((gap - expect_gap).abs() < 1e-14);
    assert!((gap - 0.5).abs() <= 1e-12);
}

#[test]
fn sorkin_controls() {
    let rho = ground_pair();
    assert!(sorkin_signaling_gap(&SorkinSetup::local_product(), &rho).unwrap() <= 1e-15);
    assert!(sorkin_control_gap(&SorkinSetup::canonical(), &rho).unwrap() <= 1e-15);
    let trivial = SorkinSetup {
        o2: O2Measurement::Observable(identity(4)),
        ..SorkinSetup::canonical()
    };
    assert!(sorkin_signaling_gap(&trivial, &rho).unwrap() <= 1e-15);
}

#[test]
fn sorkin_gap_survives_relabeling() {
    let rho = ground_pair();
    let swap_state = {
        let mut s = Matrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            s[(i, j)] = c(1.0, 0.0);
        }
        causalnet::algebra::DensityState::new(&s * rho.rho() * &s).unwrap()
    };
    for setup in [SorkinSetup::canonical(), SorkinSetup::local_product()] {
        let a = sorkin_signaling_gap(&setup, &rho).unwrap();
        let b = sorkin_signaling_gap(&setup.swapped(), &swap_state).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn sorkin_without_o2_never_signals_for_random_kicks() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let kick = causalnet::algebra::random_unitary(2, &mut rng);
        let setup = SorkinSetup {
            kick,
            ..SorkinSetup::canonical()
        };
        let out_on = sorkin_run(&setup, &ground_pair(), true, false).unwrap();
        let out_off = sorkin_run(&setup, &ground_pair(), false, false).unwrap();
        for (a, b) in out_on.iter().zip(&out_off) {
            assert!((a.probability - b.probability).abs() < 1e-14);
        }
    }
}
