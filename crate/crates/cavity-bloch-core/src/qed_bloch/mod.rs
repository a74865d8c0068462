//! QED-Bloch solver: polaritonic parameters, coupling matrices, the central equation,
//! its no-quantised-field (LLB) limit, the Harper equation and its polaritonic analogue.

mod central;
mod coupling;
mod harper;
mod params;
mod polariton_harper;
mod sweep;

pub use central::{
    assemble_central_matrix, assemble_central_reduced, assemble_llb_matrix, central_eigvals, llb_eigvals,
    BasisTruncation, DEFAULT_DIMENSION_CAP,
};
pub use coupling::{alpha_matrix, beta_matrix, g_v, g_w};
pub use harper::{
    band_intervals, cluster_bands, count_gaps, harper_bloch_eigvals, harper_chain_eigvals, harper_eigvals,
    harper_hopping, harper_unscaled, require_square,
};
pub use params::{
    electronic_screened_energy, landau_polariton_energy, lower_polariton_ceiling, lower_polariton_frequency,
    lower_polariton_wavenumber, polariton_params, screened_mass_ratio, screening_chi, PolaritonParams,
};
pub use polariton_harper::{
    butterfly_window_edge, polariton_harper_eigvals, polariton_harper_reduced, polariton_hoppings,
    PolaritonHarperOptions, PolaritonHoppings, WindowEstimate, WindowProxy,
};
pub use sweep::{kx_grid, kxw_grid, sweep, sweep_serial, AxisKind, PointFailure, ScalingMode, SpectrumGrid};
