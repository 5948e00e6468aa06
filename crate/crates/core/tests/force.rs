use skindepth_core::force::{self, ForceOptions, Geometry, DEFAULT_CORRECTION_TOL};
use skindepth_core::{preset, DielectricModel, Error};

fn correction_opts() -> ForceOptions {
    ForceOptions::default().with_rel_tol(DEFAULT_CORRECTION_TOL)
}

#[test]
fn local_reduction_factor_grows_with_separation() {
    let m = preset("gold-force-fit").unwrap();
    let opts = ForceOptions::default();
    let etas: Vec<f64> = [100.0, 200.0, 400.0, 800.0]
        .iter()
        .map(|&a| force::reduction_factor(a, &m, DielectricModel::Local, &opts).unwrap())
        .collect();
    assert!(etas.windows(2).all(|w| w[0] < w[1]), "{etas:?}");
    assert!(etas.iter().all(|&e| e > 0.0 && e < 1.0));
}

#[test]
fn large_separation_approaches_ideal() {
    let m = preset("gold-force-fit").unwrap();
    let eta = force::reduction_factor(10_000.0, &m, DielectricModel::Local, &ForceOptions::default()).unwrap();
    assert!(eta > 0.9 && eta < 1.0, "{eta}");
}

#[test]
fn polarisation_parts_sum_to_total() {
    let m = preset("gold").unwrap();
    for geometry in [Geometry::PlatePlate, Geometry::SpherePlate { radius_nm: 1e5 }] {
        let r = force::force_for(200.0, &m, DielectricModel::Boltzmann, geometry, &ForceOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.s_part + r.p_part - r.value).abs() <= 1e-12 * r.value.abs());
        assert!(r.value < 0.0 && r.s_part < 0.0 && r.p_part < 0.0);
    }
}

#[test]
fn correction_integrand_is_non_positive() {
    let m = preset("gold").unwrap();
    let opts = correction_opts();
    for &omega in &[1e-5, 1e-4, 1e-3, 1e-2, 0.1] {
        for &q in &[1e-4, 1e-3, 1e-2, 0.1, 0.3] {
            let (ds, dp) = force::correction_integrand(275.0, &m, omega, q, &opts).unwrap();
            assert!(ds <= 0.0 && dp <= 0.0, "Ω={omega} Q={q}: {ds} {dp}");
        }
    }
}

#[test]
fn s_correction_is_confined_to_low_frequencies() {
    let m = preset("gold").unwrap();
    let opts = correction_opts();
    let q = 0.02;
    let low = force::correction_integrand(275.0, &m, 1e-4, q, &opts).unwrap().0;
    let high = force::correction_integrand(275.0, &m, 0.05, q, &opts).unwrap().0;
    assert!(high.abs() < 0.1 * low.abs(), "{low} {high}");
}

#[test]
fn correction_reduces_attraction_across_separations() {
    let m = preset("gold").unwrap();
    for a in [50.0, 100.0, 300.0, 1000.0] {
        let c = force::nonlocal_correction(a, &m, Geometry::PlatePlate, &correction_opts()).unwrap();
        assert!(c.converged);
        assert!(c.relative() < 0.0, "{a} nm: {}", c.relative());
        assert!(c.delta > 0.0 && c.local.value < 0.0);
    }
}

#[test]
fn p_polarisation_dominates_correction_at_short_range() {
    let m = preset("gold-force-fit").unwrap();
    for a in [100.0, 200.0] {
        let c = force::nonlocal_correction(a, &m, Geometry::PlatePlate, &correction_opts()).unwrap();
        assert!(c.delta_s.abs() < c.delta_p.abs(), "{a} nm");
        assert!((c.delta_s + c.delta_p - c.delta).abs() <= 1e-12 * c.delta.abs());
    }
}

#[test]
fn ideal_sphere_force_is_proximity_of_plate_energy() {
    let a = 300.0;
    let r = 1e5;
    let pressure = force::ideal_force(a).unwrap();
    // E_pp = P·a/3, F_sp = 2πR·E_pp
    let expect = 2.0 * std::f64::consts::PI * r * 1e-9 * pressure * a * 1e-9 / 3.0;
    let got = force::ideal_sphere_force(a, r).unwrap();
    assert!((got / expect - 1.0).abs() < 1e-12);
}

#[test]
fn invalid_inputs_are_rejected() {
    let m = preset("gold").unwrap();
    assert!(matches!(force::ideal_force(-1.0), Err(Error::Domain(_))));
    let lindhard = DielectricModel::Lindhard { k_fermi: 1e3 };
    let err = force::force_plate_plate(100.0, &m, lindhard, &ForceOptions::default()).unwrap_err();
    assert!(err.is_unsupported());
}

#[test]
fn proximity_flag_tracks_radius() {
    let m = preset("gold").unwrap();
    let opts = ForceOptions::default().with_override(skindepth_core::ReflectionOverride::PerfectConductor);
    let wide = force::force_sphere_plate(200.0, 1e5, &m, DielectricModel::Local, &opts).unwrap();
    let narrow = force::force_sphere_plate(200.0, 1e3, &m, DielectricModel::Local, &opts).unwrap();
    assert!(wide.pfa_valid() && !narrow.pfa_valid());
    assert!(narrow.value.is_finite());
}
