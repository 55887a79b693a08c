//! Physical and astronomical constants (SI).

/// Planck constant, J s (exact, SI 2019).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Newtonian constant of gravitation, m^3 kg^-1 s^-2 (CODATA 2018).
pub const GRAVITATIONAL: f64 = 6.674_30e-11;
/// Nominal solar mass, kg (IAU 2015 GM_sun / CODATA G).
pub const SOLAR_MASS: f64 = 1.988_409_87e30;
/// Astronomical unit, m (exact, IAU 2012).
pub const AU: f64 = 1.495_978_707e11;
/// Parsec, m.
pub const PARSEC: f64 = 3.085_677_581_491_367e16;
/// One arcsecond in radians.
pub const ARCSEC: f64 = std::f64::consts::PI / 648_000.0;
/// One microarcsecond in radians.
pub const MICROARCSEC: f64 = ARCSEC * 1e-6;
/// AB magnitude zero point, W m^-2 Hz^-1 (3631 Jy).
pub const AB_ZERO_POINT: f64 = 3.631e-23;
