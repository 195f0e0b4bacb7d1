//! The Dunkl transform (rank one and radial) and the spectral calculus built on it.

mod calculus;
mod kernel;
mod transform;

pub use calculus::{
    fractional_laplacian, fractional_laplacian_samples, fractional_norm, littlewood_paley_project, riesz_potential,
    sobolev_norm, spectral_norm, square_function_ratio, DyadicPartition, NormRoute, SquareFunctionRatio,
    INVERSE_REACH, RIESZ_LOW_FREQUENCY_THRESHOLD,
};
pub use transform::{
    calibration_report, dunkl_transform, dunkl_transform_rank1, dunkl_transform_reaching, dunkl_transform_with,
    radial_transform, sample_on_grid, CalibrationReport, PhysicalSamples, SpectralConfig, SpectralField,
};

/// Band-limited test function: (−Δ_k)^m e^{−|x|²/(2σ²)}, whose transform is a multiple of
/// |ξ|^{2m} e^{−σ²|ξ|²/2} and so vanishes to order 2m at ξ = 0.
pub fn band_limited(m: u32, sigma: f64, setting: &crate::measure::Setting) -> crate::Result<crate::measure::TestFunction> {
    let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
    let mut f = crate::measure::TestFunction::gaussian(sigma).laplacian_power(m, setting)?.scaled(sign);
    f.id = format!("band-limited-m{m}-s{sigma}");
    f.params.insert("m".into(), m as f64);
    Ok(f)
}
