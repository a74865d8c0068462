//! Dispatch from a validated config to the physics modules.

use crate::config::{ButterflyModel, KSampling, Params, PolaritonModel, ResponseFunction, RunConfig, SpectralGrid};
use crate::envelope::{LatticeRecord, Payload, ResponsePayload, Series, SpectrumPayload, TablePayload};
use cavity_bloch_core::cavity_gas::{
    ground_state_photon_occupation, no_a2_coupling, single_mode_energy, stability_classify, CavitySetup,
    GasEigenstateLabel, Stability,
};
use cavity_bloch_core::constants::{E_CHARGE, HBAR, M_E};
use cavity_bloch_core::eft::{
    absorption_plateau, casimir_pressure, chemical_potential, effective_coupling, photon_energy_density,
    renormalized_mass,
};
use cavity_bloch_core::landau_hall::{cyclotron_frequency, filling_factor, hall_conductance, fermi_2d};
use cavity_bloch_core::lattice::{bravais_cosine_potential, field_for_flux_ratio, mtg_flux_condition, Lattice2D};
use cavity_bloch_core::qed_bloch::{
    assemble_central_reduced, harper_eigvals, harper_unscaled, kx_grid, llb_eigvals, lower_polariton_frequency,
    polariton_harper_eigvals, polariton_harper_reduced, polariton_params, screening_chi, sweep, AxisKind,
    BasisTruncation, PolaritonHarperOptions, ScalingMode,
};
use cavity_bloch_core::numerics::hermitian_eigvals;
use cavity_bloch_core::response::{
    chi_aa, chi_ea, chi_jj, chi_mixed, dc_suppression, default_eta, drude_conductivity, optical_conductivity,
    symmetric_grid, ResponseSample,
};
use cavity_bloch_core::Error;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Runs the configured computation. Pure in `(config, seed)`.
pub fn run(config: &RunConfig, seed: u64) -> Result<Payload, Error> {
    match config.params {
        Params::Gas { setup, area } => gas(&setup, area),
        Params::Response { setup, area, function, grid } => response(&setup, area, function, &grid),
        Params::Conductivity { setup, grid } => conductivity(&setup, &grid),
        Params::Eft { setup } => eft(&setup),
        Params::Landau { n2d, mass_ratio, b_min, b_max, points } => landau(n2d, mass_ratio, b_min, b_max, points),
        Params::Polariton { omega_p, mass_ratio, b_min, b_max, points } => {
            polariton(omega_p, mass_ratio, b_min, b_max, points)
        }
        Params::Butterfly { .. } => butterfly(&config.params, seed),
        Params::PolaritonButterfly { .. } => polariton_butterfly(&config.params, seed),
        Params::MtgCheck { lattice, b_field, p } => mtg(&lattice, b_field, p),
    }
}

/// `n` samples from `lo` to `hi` inclusive (`[lo]` for `n = 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn k_samples(lat: &Lattice2D, n: usize, sampling: KSampling, seed: u64) -> Vec<[f64; 2]> {
    match sampling {
        KSampling::Uniform => kx_grid(lat, n),
        KSampling::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let half = PI / lat.a1;
            let mut k: Vec<f64> = (0..n).map(|_| rng.gen_range(-half..half)).collect();
            k.sort_by(f64::total_cmp);
            k.into_iter().map(|x| [x, 0.0]).collect()
        }
    }
}

fn stability_code(s: Stability) -> f64 {
    match s {
        Stability::Stable => 0.0,
        Stability::Critical => 1.0,
        Stability::Unstable => 2.0,
    }
}

fn gas(setup: &CavitySetup, area: f64) -> Result<Payload, Error> {
    let (w, wp) = (setup.omega_cav, setup.omega_p());
    let gamma = setup.gamma();
    let stability = stability_classify(gamma);
    let (gamma_no_a2, no_a2) = no_a2_coupling(w, wp)?;
    let disk = fermi_2d(setup.n2d)?;
    let ground = single_mode_energy(setup, &GasEigenstateLabel::ground(disk.energy_density * area), area)?;
    let mut t = TablePayload::new(&[
        ("omega_cav", "rad/s"),
        ("l_z", "m"),
        ("n2d", "m^-2"),
        ("mass_ratio", "1"),
        ("omega_p", "rad/s"),
        ("omega_tilde", "rad/s"),
        ("gamma", "1"),
        ("stability", "0=stable,1=critical,2=unstable"),
        ("gamma_no_a2", "1"),
        ("stability_no_a2", "0=stable,1=critical,2=unstable"),
        ("electrons", "1"),
        ("photon_occupation", "1"),
        ("dc_ratio", "1"),
        ("k_f", "1/m"),
        ("energy_density", "J/m^2"),
        ("ground_energy", "J"),
    ]);
    let dc = dc_suppression(gamma)?;
    t.rows.push(vec![
        w,
        setup.mirror_distance(),
        setup.n2d,
        setup.mass_ratio,
        wp,
        setup.omega_tilde(),
        gamma,
        stability_code(stability),
        gamma_no_a2,
        stability_code(no_a2),
        setup.electrons(area),
        ground_state_photon_occupation(w, wp)?,
        dc.ratio,
        disk.k_f,
        disk.energy_density,
        ground,
    ]);
    t.label("stability", stability.name());
    t.label("stability_no_a2", no_a2.name());
    Ok(Payload::Table(t))
}

fn frequency_grid(setup: &CavitySetup, grid: &SpectralGrid) -> (Vec<f64>, f64) {
    let wt = setup.omega_tilde();
    (symmetric_grid(grid.w_max.unwrap_or(4.0 * wt), grid.points), grid.eta.unwrap_or(default_eta(wt)))
}

fn series(name: &str, unit: &str, s: &ResponseSample) -> Series {
    Series { name: name.to_string(), unit: unit.to_string(), re: s.re(), im: s.im() }
}

fn response(setup: &CavitySetup, area: f64, function: ResponseFunction, grid: &SpectralGrid) -> Result<Payload, Error> {
    let (w, eta) = frequency_grid(setup, grid);
    let volume = area * setup.mirror_distance();
    let electrons = setup.electrons(area);
    let wt = setup.omega_tilde();
    let (sample, unit) = match function {
        ResponseFunction::ChiAa => (chi_aa(&w, eta, wt, volume)?, "s^2/(F m^2)"),
        ResponseFunction::ChiEa => (chi_ea(&w, eta, wt, volume)?, "s/(F m^2)"),
        ResponseFunction::ChiJj => (chi_jj(&w, eta, setup, electrons, volume)?, "C^4 s^2/(kg^2 F m^2)"),
        ResponseFunction::ChiJa => (chi_mixed(&w, eta, setup, electrons, volume)?.0, "C^2 s^2/(kg F m^2)"),
    };
    Ok(Payload::Response(ResponsePayload { eta, series: vec![series(function.name(), unit, &sample)], w }))
}

fn conductivity(setup: &CavitySetup, grid: &SpectralGrid) -> Result<Payload, Error> {
    let (w, eta) = frequency_grid(setup, grid);
    let sigma = optical_conductivity(&w, eta, setup)?;
    let drude = drude_conductivity(&w, eta, setup)?;
    Ok(Payload::Response(ResponsePayload {
        eta,
        series: vec![series("sigma", "S/m", &sigma), series("drude", "S/m", &drude)],
        w,
    }))
}

fn eft(setup: &cavity_bloch_core::eft::EftSetup) -> Result<Payload, Error> {
    let k_f = fermi_2d(setup.n2d)?.k_f;
    let mut cols = vec![
        ("l_z", "m"),
        ("n2d", "m^-2"),
        ("electrons", "1"),
        ("mass_ratio", "1"),
        ("ln_lambda0", "1"),
        ("alpha", "1"),
        ("omega_p", "rad/s"),
        ("omega_tilde_kz", "rad/s"),
        ("effective_coupling", "1"),
        ("ln_landau_pole_multiplier", "1"),
        ("photon_energy_density", "J/m^2"),
        ("casimir_pressure", "Pa"),
        ("absorption_plateau", "s^2/(F m^2)"),
    ];
    let mut row = vec![
        setup.l_z,
        setup.n2d,
        setup.electrons,
        setup.mass_ratio,
        setup.ln_lambda0(),
        setup.alpha(),
        setup.omega_p(),
        setup.omega_tilde_kz(),
        effective_coupling(setup)?,
        setup.ln_pole_multiplier(),
        photon_energy_density(setup),
        casimir_pressure(setup),
        absorption_plateau(setup),
    ];
    let mut labels = Vec::new();
    match renormalized_mass(setup) {
        Ok(m) => {
            cols.push(("renormalized_mass", "kg"));
            row.push(m);
            cols.push(("chemical_potential", "J"));
            row.push(chemical_potential(setup, k_f)?);
        }
        Err(e) => labels.push(("renormalized_mass", e.to_string())),
    }
    let mut t = TablePayload::new(&cols);
    for (k, v) in labels {
        t.label(k, v);
    }
    if let Some(i) = row.iter().position(|x| !x.is_finite()) {
        return Err(Error::Unbounded { op: "eft", detail: format!("{} is not finite", cols[i].0) });
    }
    t.rows.push(row);
    Ok(Payload::Table(t))
}

fn landau(n2d: f64, mass_ratio: f64, b_min: f64, b_max: f64, points: usize) -> Result<Payload, Error> {
    let mut t = TablePayload::new(&[
        ("b_field", "T"),
        ("omega_c", "rad/s"),
        ("filling", "1"),
        ("filled_levels", "1"),
        ("sigma_xy", "S"),
        ("lowest_level", "J"),
    ]);
    for b in linspace(b_min, b_max, points) {
        let nu = filling_factor(n2d, b)?;
        let filled = nu.floor();
        let wc = cyclotron_frequency(b, mass_ratio);
        t.rows.push(vec![b, wc, nu, filled, hall_conductance(filled as u32).sigma_xy, 0.5 * HBAR * wc]);
    }
    Ok(Payload::Table(t))
}

fn polariton(omega_p: f64, mass_ratio: f64, b_min: f64, b_max: f64, points: usize) -> Result<Payload, Error> {
    let mut t = TablePayload::new(&[
        ("b_field", "T"),
        ("omega_c", "rad/s"),
        ("g", "1"),
        ("omega_upper", "rad/s"),
        ("omega_lower_max", "rad/s"),
        ("chi", "1"),
    ]);
    for b in linspace(b_min, b_max, points) {
        let wc = cyclotron_frequency(b, mass_ratio);
        let p = polariton_params(omega_p, wc)?;
        t.rows.push(vec![b, wc, p.g, p.omega, lower_polariton_frequency(omega_p, wc), screening_chi(p.g)?]);
    }
    t.label("omega_p", format!("{omega_p:e} rad/s"));
    t.label("lower_ceiling", format!("{:e} rad/s", 0.5 * omega_p));
    Ok(Payload::Table(t))
}

fn lattice_record(kind: &str, lat: &Lattice2D) -> LatticeRecord {
    LatticeRecord { kind: kind.to_string(), a1: lat.a1, a2: lat.a2, theta: lat.theta }
}

fn butterfly(params: &Params, seed: u64) -> Result<Payload, Error> {
    let Params::Butterfly {
        kind,
        lattice,
        v0,
        reciprocal,
        axis_min,
        axis_max,
        points,
        model,
        raw,
        g,
        trunc,
        k_points,
        k_sampling,
        window,
    } = *params
    else {
        unreachable!()
    };
    let axis = linspace(axis_min, axis_max, points);
    let k = k_samples(&lattice, k_points, k_sampling, seed);
    let pot = bravais_cosine_potential(kind, v0, &lattice)?;
    let to_flux = move |x: f64| if reciprocal { 1.0 / x } else { x };
    let omega_c = move |flux: f64| E_CHARGE * field_for_flux_ratio(&lattice, flux) / M_E;
    let axis_kind = if reciprocal { AxisKind::ReciprocalFlux } else { AxisKind::FluxRatio };
    let v_coef = 0.5 * v0;
    let grid = match model {
        ButterflyModel::Harper if raw => sweep(axis_kind, ScalingMode::RawJoules, &axis, &k, |x, k| {
            harper_unscaled(to_flux(x), k[0], &lattice, trunc.n_max, v_coef)
        })?,
        ButterflyModel::Harper => sweep(axis_kind, ScalingMode::HarperScaled, &axis, &k, |x, k| {
            harper_eigvals(to_flux(x), k[0], &lattice, trunc.n_max)
        })?,
        ButterflyModel::Llb => sweep(axis_kind, ScalingMode::RawJoules, &axis, &k, |x, k| {
            llb_eigvals(&pot, omega_c(to_flux(x)), k[0], &trunc)
        })?,
        ButterflyModel::Central => sweep(axis_kind, ScalingMode::RawJoules, &axis, &k, |x, k| {
            let wc = omega_c(to_flux(x));
            let p = polariton_params(g * wc, wc)?;
            hermitian_eigvals(&assemble_central_reduced(&pot, &p, (k[0], k[1]), 0.0, &trunc)?)
        })?,
    };
    let grid = grid.with_metadata(Some(trunc), Some(lattice));
    let mut out = SpectrumPayload::from_grid(&grid, "1");
    out.lattice = Some(lattice_record(kind.name(), &lattice));
    out.window = window.map(|(lo, hi)| [lo, hi]);
    Ok(Payload::Spectrum(out))
}

fn polariton_butterfly(params: &Params, seed: u64) -> Result<Payload, Error> {
    let Params::PolaritonButterfly {
        lattice,
        flux_ratio,
        g_min,
        g_max,
        points,
        model,
        v_coef,
        kinetic,
        psi,
        n_max,
        k_points,
        k_sampling,
    } = *params
    else {
        unreachable!()
    };
    let axis = linspace(g_min, g_max, points);
    let k = k_samples(&lattice, k_points, k_sampling, seed);
    let trunc = BasisTruncation::new(n_max, 0)?;
    let grid = match model {
        PolaritonModel::Reduced => sweep(AxisKind::CouplingG, ScalingMode::PolaritonScaled, &axis, &k, |g, k| {
            polariton_harper_reduced(flux_ratio, g, lattice.a1 * k[0] / (2.0 * PI), psi, n_max)
        })?,
        PolaritonModel::Full => {
            let opts = PolaritonHarperOptions { v_coef, include_kinetic: kinetic };
            sweep(AxisKind::CouplingG, ScalingMode::PolaritonScaled, &axis, &k, |g, k| {
                polariton_harper_eigvals(flux_ratio, g, (k[0], k[1]), &lattice, &trunc, &opts)
            })?
        }
    };
    let grid = grid.with_metadata(Some(trunc), Some(lattice));
    let mut out = SpectrumPayload::from_grid(&grid, "1");
    out.lattice = Some(lattice_record("square", &lattice));
    Ok(Payload::Spectrum(out))
}

fn mtg(lattice: &Lattice2D, b_field: f64, p: u32) -> Result<Payload, Error> {
    let v = mtg_flux_condition(lattice, b_field, p)?;
    let mut t = TablePayload::new(&[
        ("b_field", "T"),
        ("flux_ratio", "1"),
        ("p", "1"),
        ("abelian", "0=no,1=yes"),
        ("flux_residual", "1"),
        ("geometry_residual", "1"),
    ]);
    let flux = cavity_bloch_core::lattice::flux_ratio(lattice, b_field);
    t.rows.push(vec![b_field, flux, p as f64, if v.abelian { 1.0 } else { 0.0 }, v.flux_residual, v.geometry_residual]);
    t.label("verdict", if v.abelian { "abelian-group" } else { "non-abelian" });
    Ok(Payload::Table(t))
}
