use causalnet::lattice_field::{
    cauchy_evolve, cone_suppression, domain_of_dependence_check, energy, pauli_jordan,
    pauli_jordan_row, pulse_extent, CauchyData, LatticeSpec, SiteInterval,
};
use proptest::prelude::*;

/// Right-hand side of `φ̇ = π`, `π̇ = (φ_{n+1} + φ_{n−1} − 2φ_n)/a² − m²φ_n`.
fn rhs(spec: &LatticeSpec, phi: &[f64], pi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = spec.n;
    let dpi = (0..n)
        .map(|k| {
            let lap = phi[(k + 1) % n] + phi[(k + n - 1) % n] - 2.0 * phi[k];
            lap / (spec.a * spec.a) - spec.m * spec.m * phi[k]
        })
        .collect();
    (pi.to_vec(), dpi)
}

fn rk4(spec: &LatticeSpec, data: &CauchyData, t: f64, steps: usize) -> CauchyData {
    let h = t / steps as f64;
    let (mut phi, mut pi) = (data.phi.clone(), data.pi.clone());
    let axpy = |x: &[f64], y: &[f64], s: f64| -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| a + s * b).collect()
    };
    for _ in 0..steps {
        let (k1p, k1m) = rhs(spec, &phi, &pi);
        let (k2p, k2m) = rhs(spec, &axpy(&phi, &k1p, h / 2.0), &axpy(&pi, &k1m, h / 2.0));
        let (k3p, k3m) = rhs(spec, &axpy(&phi, &k2p, h / 2.0), &axpy(&pi, &k2m, h / 2.0));
        let (k4p, k4m) = rhs(spec, &axpy(&phi, &k3p, h), &axpy(&pi, &k3m, h));
        for k in 0..spec.n {
            phi[k] += h / 6.0 * (k1p[k] + 2.0 * k2p[k] + 2.0 * k3p[k] + k4p[k]);
            pi[k] += h / 6.0 * (k1m[k] + 2.0 * k2m[k] + 2.0 * k3m[k] + k4m[k]);
        }
    }
    CauchyData { phi, pi }
}

#[test]
fn mode_evolution_matches_time_stepping() {
    let spec = LatticeSpec::new(32, 0.5, 1.3).unwrap();
    let data = CauchyData::new(
        (0..32).map(|k| (k as f64 * 0.37).sin()).collect(),
        (0..32).map(|k| if k == 5 { 1.0 } else { 0.0 }).collect(),
    )
    .unwrap();
    let exact = cauchy_evolve(&spec, &data, 2.0).unwrap();
    let oracle = rk4(&spec, &data, 2.0, 4000);
    for (x, y) in exact.phi.iter().zip(&oracle.phi) {
        assert!((x - y).abs() < 1e-9, "{x} vs {y}");
    }
}

#[test]
fn commutator_is_the_response_to_a_momentum_kick() {
    // φ(t, n) after π = δ_0 is Δ(t, n)
    let spec = LatticeSpec::new(32, 1.0, 0.6).unwrap();
    let mut data = CauchyData::zeros(32);
    data.pi[0] = 1.0;
    let oracle = rk4(&spec, &data, 3.0, 3000);
    let row = pauli_jordan_row(&spec, 3.0);
    for k in 0..32 {
        assert!((row[k] - oracle.phi[k]).abs() < 1e-9);
    }
}

#[test]
fn canonical_normalization() {
    let spec = LatticeSpec::new(64, 1.0, 1.0).unwrap();
    let dt = 1e-4;
    for n in -5i64..=5 {
        let d = (pauli_jordan(&spec, dt, n) - pauli_jordan(&spec, -dt, n)) / (2.0 * dt);
        let expect = if n == 0 { 1.0 } else { 0.0 };
        assert!((d - expect).abs() < 1e-6, "n={n}: {d}");
    }
}

#[test]
fn lightcone_suppression_at_512_sites() {
    let spec = LatticeSpec::new(512, 1.0, 1.0).unwrap();
    let s = cone_suppression(&spec, 50.0, 5.0).unwrap();
    assert!(s.ratio <= 1e-3, "{s:?}");
}

#[test]
fn suppression_improves_under_refinement() {
    let ratios: Vec<f64> = [128usize, 256, 512]
        .iter()
        .map(|&n| {
            let spec = LatticeSpec::new(n, 512.0 / n as f64, 1.0).unwrap();
            cone_suppression(&spec, 50.0, 5.0).unwrap().ratio
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
}

#[test]
fn pulse_stays_inside_widened_cone() {
    let spec = LatticeSpec::new(512, 1.0, 1.0).unwrap();
    for t in [1.0, 5.0, 10.0, 20.0, 50.0, 100.0] {
        let (lo, hi) = pulse_extent(&spec, 256, t, 1e-8).unwrap().unwrap();
        let reach = t + 8.0;
        assert!(lo as f64 >= -reach && hi as f64 <= reach, "t={t}: {lo}..{hi}");
    }
}

fn pulse_outside(spec: &LatticeSpec, iv: SiteInterval) -> (CauchyData, CauchyData) {
    let base = CauchyData::new(
        (0..spec.n).map(|k| (k as f64 * 0.1).cos()).collect(),
        vec![0.0; spec.n],
    )
    .unwrap();
    let mut kicked = base.clone();
    kicked.phi[iv.start - 1] += 1.0;
    kicked.pi[iv.end()] += 1.0;
    (base, kicked)
}

#[test]
fn data_on_interval_fixes_the_shrunken_cone() {
    let spec = LatticeSpec::new(512, 1.0, 1.0).unwrap();
    let iv = SiteInterval { start: 128, len: 256 };
    let (d1, d2) = pulse_outside(&spec, iv);
    for t in [1.0, 10.0, 40.0, 100.0] {
        let r = domain_of_dependence_check(&spec, &d1, &d2, iv, t, 8).unwrap();
        assert!(r.max_deviation_inside <= 1e-6, "t={t}: {r:?}");
        assert!(!r.region_checked.is_empty());
    }
    let r = domain_of_dependence_check(&spec, &d1, &d2, iv, 100.0, 8).unwrap();
    assert!(r.max_deviation_excluded >= 1e-2, "{}", r.max_deviation_excluded);
}

#[test]
fn equal_slices_give_identical_evolutions() {
    let spec = LatticeSpec::new(128, 1.0, 0.5).unwrap();
    let d = CauchyData::new(
        (0..128).map(|k| (k as f64).sqrt()).collect(),
        (0..128).map(|k| (k as f64 * 0.2).sin()).collect(),
    )
    .unwrap();
    let a = cauchy_evolve(&spec, &d, 17.0).unwrap();
    let b = cauchy_evolve(&spec, &d.clone(), 17.0).unwrap();
    assert!(a.phi.iter().zip(&b.phi).all(|(x, y)| x.to_bits() == y.to_bits()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_symmetries(
        log_n in 3u32..8, a in 0.2f64..2.0, m in 0.0f64..2.0, t in -20.0f64..20.0, n in -64i64..64
    ) {
        let spec = LatticeSpec::new(1 << log_n, a, m).unwrap();
        let nn = spec.n as i64;
        prop_assert!(pauli_jordan(&spec, 0.0, n).abs() <= 1e-12);
        prop_assert!((pauli_jordan(&spec, -t, n) + pauli_jordan(&spec, t, n)).abs() <= 1e-12);
        prop_assert!((pauli_jordan(&spec, t, n) - pauli_jordan(&spec, t, nn - n)).abs() <= 1e-12);
    }

    #[test]
    fn energy_is_conserved(seed in 0u64..1000, t in -30.0f64..30.0, m in 0.0f64..2.0) {
        let spec = LatticeSpec::new(64, 1.0, m).unwrap();
        let phi: Vec<f64> = (0..64).map(|k| ((k as u64 * 7919 + seed) % 97) as f64 / 97.0 - 0.5).collect();
        let pi: Vec<f64> = (0..64).map(|k| ((k as u64 * 104729 + seed) % 89) as f64 / 89.0 - 0.5).collect();
        let d = CauchyData::new(phi, pi).unwrap();
        let e0 = energy(&spec, &d).unwrap();
        let e1 = energy(&spec, &cauchy_evolve(&spec, &d, t).unwrap()).unwrap();
        prop_assert!(((e1 - e0) / e0).abs() <= 1e-10);
    }
}
