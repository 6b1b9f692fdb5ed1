use qflow_core::well::{canonical_scenario, compare_with_superposition, ComparisonOptions};
use qflow_core::{Boundary, GaussianParams, GridGeometry, SuperpositionSpec};

#[test]
#[ignore]
fn probe_cross_method() {
    // CN vs spectral free evolution, matched grids, t in [0, 2 tau].
    use qflow_core::grid::*;
    let n = 8192;
    let g_p = GridGeometry::new_1d(-16.0, 16.0, n, Boundary::Periodic).unwrap();
    let g_d = GridGeometry::new_1d(-16.0, 16.0, n, Boundary::Dirichlet).unwrap();
    let spec =
        SuperpositionSpec::single(GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap());
    let mut sp = initialize_grid(&spec, &g_p).unwrap();
    let mut sd = initialize_grid(&spec, &g_d).unwrap();
    let mut stepper = SpectralStepper::new(&g_p, 1.0, 1.0).unwrap();
    let mut cn = CrankNicolson::new(&g_d, 1.0, 1.0).unwrap();
    let dt = 2e-4;
    let start = std::time::Instant::now();
    let mut max_dev = 0.0f64;
    for k in 1..=20000 {
        sp = stepper.step(&sp, &PotentialSpec::Free, dt).unwrap();
        sd = cn.step(&sd, &PotentialSpec::Free, dt).unwrap();
        if k % 2000 == 0 {
            let dev = sp
                .psi
                .iter()
                .zip(&sd.psi)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            max_dev = max_dev.max(dev);
            println!("t = {:.2}: max pointwise dev {:.3e}", sp.t, dev);
        }
    }
    println!("elapsed {:?}, overall {:.3e}", start.elapsed(), max_dev);
}

#[test]
#[ignore]
fn probe_collision_ensemble() {
    use qflow_core::traj::*;
    // Head-on collision, v0/vs = 10 (v0 = 5), packets at -/+5, n = 50.
    let spec = SuperpositionSpec::new(
        vec![
            GaussianParams::new_1d(1.0, 1.0, 1.0, -5.0, 5.0).unwrap(),
            GaussianParams::new_1d(1.0, 1.0, 1.0, 5.0, -5.0).unwrap(),
        ],
        1,
    )
    .unwrap();
    let start = std::time::Instant::now();
    let initial: Vec<[f64; 2]> = superposition_quantiles(&spec, 0.0, 50)
        .unwrap()
        .into_iter()
        .map(|x| [x, 0.0])
        .collect();
    let times: Vec<f64> = (0..=150).map(|i| 3.0 * i as f64 / 150.0).collect();
    let provider = AnalyticProvider::new(spec);
    let ens = integrate_ensemble(&provider, &initial, None, &times, 1e-8).unwrap();
    println!("integration took {:?}", start.elapsed());
    println!("halts: {:?}", ens.halts);
    let report = check_noncrossing(&ens);
    println!("noncrossing pass: {}, checked {}", report.pass, report.paths_checked);
    if let Some(v) = report.first_violation {
        println!("violation: {:?}", v);
    }
}

#[test]
#[ignore]
fn probe_ablation_and_refinement() {
    let (params, geometry, t_final) = canonical_scenario();
    // Wall-only ablation.
    let ablation = compare_with_superposition(
        &params,
        &geometry,
        t_final,
        &ComparisonOptions {
            disable_well: true,
            ..Default::default()
        },
    )
    .unwrap();
    println!("ABLATION (wall only):");
    println!("  matched: {:?}", ablation.matched_peaks);
    println!("  innermost well {:?} sup {:?}", ablation.innermost_ratio_well, ablation.innermost_ratio_superposition);
    println!("  half width ok: {:?}", ablation.half_width_ok);

    // Refinement: 4096 nodes, dt / 4.
    let fine_geom = GridGeometry::new_1d(-30.0, 2.0, 4096, Boundary::Dirichlet).unwrap();
    let fine = compare_with_superposition(
        &params,
        &fine_geom,
        t_final,
        &ComparisonOptions {
            dt: 2.5e-4,
            ..Default::default()
        },
    )
    .unwrap();
    println!("REFINED (4096 nodes, dt 2.5e-4):");
    println!("  matched: {:?}", fine.matched_peaks);
    println!("  max delta: {:?}", fine.max_peak_delta);
}

#[test]
#[ignore]
fn probe_well_comparison() {
    let (params, geometry, t_final) = canonical_scenario();
    let start = std::time::Instant::now();
    let report =
        compare_with_superposition(&params, &geometry, t_final, &ComparisonOptions::default())
            .unwrap();
    println!("elapsed: {:?}", start.elapsed());
    println!("cell = {}", report.grid_cell);
    println!("velocity ratio = {}", report.velocity_ratio);
    if let Some(f) = &report.fringes_well {
        println!("well peaks:");
        for p in &f.peaks {
            println!(
                "  pos {:9.4}  h {:9.5}  fwhm {:7.4}  prom {:9.5}",
                p.position, p.height, p.fwhm, p.prominence
            );
        }
        println!("well innermost ratio: {:?}", f.innermost_ratio);
    } else {
        println!("well fringes: NONE");
    }
    if let Some(f) = &report.fringes_superposition {
        println!("superposition peaks:");
        for p in &f.peaks {
            println!(
                "  pos {:9.4}  h {:9.5}  fwhm {:7.4}  prom {:9.5}",
                p.position, p.height, p.fwhm, p.prominence
            );
        }
        println!("sup innermost ratio: {:?}", f.innermost_ratio);
    } else {
        println!("sup fringes: NONE");
    }
    println!("matched: {:?}", report.matched_peaks);
    println!("max delta: {:?} (cell {})", report.max_peak_delta, report.grid_cell);
    println!("within one cell: {:?}", report.peaks_within_one_cell);
    println!("half width ok: {:?}", report.half_width_ok);
}
