//! Physical parameter types.
//!
//! Natural units throughout: the total decay rate Γ is 1, frequencies are in
//! units of Γ and times in units of 1/Γ. Amplitudes follow the flux convention
//! |α|² = photons per 1/Γ.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Total decay rate. Fixed; every other rate is expressed relative to it.
pub const GAMMA: f64 = 1.0;

/// Above this coupling efficiency the weak-coupling assumption is questionable.
pub const WEAK_COUPLING_LIMIT: f64 = 0.1;

/// Above this Rabi amplitude (units of Γ) the leading-order drive expansion is questionable.
pub const WEAK_DRIVE_LIMIT: f64 = 0.1;

/// Model-validity warnings. They never abort a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValidityFlag {
    /// β > 0.1.
    StrongCoupling,
    /// max |Ω| > 0.1 Γ.
    StrongDrive,
    /// Combined illumination with the external field in anti-phase (r < 0).
    AntiPhaseDrive,
    /// Some emitter of a combined-illumination chain has β'(n) ≥ 0.5.
    LargeEffectiveCoupling,
    /// The frequency grid had to be widened to hold the spectrum.
    GridWidened,
}

impl fmt::Display for ValidityFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValidityFlag::StrongCoupling => "strong_coupling(beta>0.1)",
            ValidityFlag::StrongDrive => "strong_drive(|omega|>0.1)",
            ValidityFlag::AntiPhaseDrive => "anti_phase_drive(r<0)",
            ValidityFlag::LargeEffectiveCoupling => "large_effective_coupling(beta'>=0.5)",
            ValidityFlag::GridWidened => "grid_widened",
        };
        f.write_str(s)
    }
}

/// Sorted, duplicate-free set of validity flags.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags(Vec<ValidityFlag>);

impl Flags {
    pub fn insert(&mut self, flag: ValidityFlag) {
        if let Err(pos) = self.0.binary_search(&flag) {
            self.0.insert(pos, flag);
        }
    }

    pub fn extend(&mut self, other: &Flags) {
        for &f in &other.0 {
            self.insert(f);
        }
    }

    pub fn contains(&self, flag: ValidityFlag) -> bool {
        self.0.binary_search(&flag).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ValidityFlag> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        for (i, flag) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{flag}")?;
        }
        Ok(())
    }
}

/// Per-chain physical constants: coupling efficiency β and laser–atom detuning Δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmitterParams {
    beta: f64,
    delta: f64,
}

impl EmitterParams {
    pub fn new(beta: f64, delta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::invalid(
                "beta",
                format!("must satisfy 0 < beta < 1, got {beta}"),
            ));
        }
        if !delta.is_finite() {
            return Err(Error::invalid(
                "delta",
                format!("must be finite, got {delta}"),
            ));
        }
        Ok(Self { beta, delta })
    }

    pub fn resonant(beta: f64) -> Result<Self> {
        Self::new(beta, 0.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        GAMMA
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.beta, delta)
    }

    pub fn flags(&self) -> Flags {
        let mut flags = Flags::default();
        if self.beta > WEAK_COUPLING_LIMIT {
            flags.insert(ValidityFlag::StrongCoupling);
        }
        flags
    }

    pub(crate) fn require_resonant(&self, what: &str) -> Result<()> {
        if self.delta != 0.0 {
            return Err(Error::Unsupported(format!(
                "{what} is only modelled on resonance (delta = 0), got delta = {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// Illumination geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DriveMode {
    /// One emitter driven from outside the waveguide.
    ExternalSingle,
    /// Drive through the waveguide.
    Waveguide,
    /// External plane wave under the Bragg angle.
    Bragg,
    /// External plane wave under the anti-Bragg angle.
    AntiBragg,
    /// Guided and external drive, in phase at the emitters.
    Combined,
}

impl DriveMode {
    pub fn name(self) -> &'static str {
        match self {
            DriveMode::ExternalSingle => "external",
            DriveMode::Waveguide => "waveguide",
            DriveMode::Bragg => "bragg",
            DriveMode::AntiBragg => "antibragg",
            DriveMode::Combined => "combined",
        }
    }

    /// Whether the guided amplitude Ω_wg sets the scale (otherwise Ω_ext does).
    pub fn guided_reference(self) -> bool {
        matches!(self, DriveMode::Waveguide | DriveMode::Combined)
    }
}

impl fmt::Display for DriveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DriveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "external" | "external_single" | "externalsingle" => Ok(DriveMode::ExternalSingle),
            "waveguide" | "wg" => Ok(DriveMode::Waveguide),
            "bragg" => Ok(DriveMode::Bragg),
            "antibragg" | "anti_bragg" | "anti-bragg" => Ok(DriveMode::AntiBragg),
            "combined" => Ok(DriveMode::Combined),
            other => Err(Error::invalid(
                "geometry",
                format!("unknown geometry `{other}`"),
            )),
        }
    }
}

/// Illumination geometry, Rabi amplitudes (units of Γ) and chain length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveConfig {
    pub mode: DriveMode,
    pub omega_wg: Complex64,
    pub omega_ext: Complex64,
    pub n_emitters: usize,
    /// Ω_ext/Ω_wg as given when the drive was built from a ratio. Kept so that
    /// rescaling both amplitudes cannot perturb it by rounding.
    pub ratio: Option<f64>,
}

impl DriveConfig {
    pub fn new(
        mode: DriveMode,
        omega_wg: Complex64,
        omega_ext: Complex64,
        n_emitters: usize,
    ) -> Result<Self> {
        let cfg = Self {
            mode,
            omega_wg,
            omega_ext,
            n_emitters,
            ratio: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn external(omega_ext: Complex64) -> Result<Self> {
        Self::new(
            DriveMode::ExternalSingle,
            Complex64::new(0.0, 0.0),
            omega_ext,
            1,
        )
    }

    pub fn waveguide(omega_wg: Complex64, n: usize) -> Result<Self> {
        Self::new(DriveMode::Waveguide, omega_wg, Complex64::new(0.0, 0.0), n)
    }

    pub fn bragg(omega_ext: Complex64, n: usize) -> Result<Self> {
        Self::new(DriveMode::Bragg, Complex64::new(0.0, 0.0), omega_ext, n)
    }

    pub fn anti_bragg(omega_ext: Complex64, n: usize) -> Result<Self> {
        Self::new(DriveMode::AntiBragg, Complex64::new(0.0, 0.0), omega_ext, n)
    }

    /// Combined drive with Ω_ext = ratio · Ω_wg.
    pub fn combined(omega_wg: Complex64, ratio: f64, n: usize) -> Result<Self> {
        if !ratio.is_finite() {
            return Err(Error::invalid("ratio", "must be finite"));
        }
        let mut cfg = Self::new(DriveMode::Combined, omega_wg, omega_wg * ratio, n)?;
        cfg.ratio = Some(ratio);
        Ok(cfg)
    }

    /// Both amplitudes multiplied by `k`.
    pub fn scaled(&self, k: Complex64) -> Result<Self> {
        let cfg = Self {
            omega_wg: self.omega_wg * k,
            omega_ext: self.omega_ext * k,
            ..*self
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_emitters(&self, n: usize) -> Self {
        Self {
            n_emitters: n,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("omega_wg", self.omega_wg), ("omega_ext", self.omega_ext)] {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::invalid(field, "must be finite"));
            }
        }
        if self.omega_wg.norm() + self.omega_ext.norm() <= 0.0 {
            return Err(Error::invalid(
                "omega",
                "at least one drive amplitude must be non-zero",
            ));
        }
        let read_ok = match self.mode {
            DriveMode::Waveguide | DriveMode::Combined => self.omega_wg.norm() > 0.0,
            _ => self.omega_ext.norm() > 0.0,
        };
        if !read_ok {
            let field = if self.mode.guided_reference() {
                "omega_wg"
            } else {
                "omega_ext"
            };
            return Err(Error::invalid(
                field,
                format!("{} geometry needs a non-zero {field}", self.mode),
            ));
        }
        Ok(())
    }

    /// The amplitude every output of this geometry is proportional to.
    pub fn reference_drive(&self) -> Complex64 {
        if self.mode.guided_reference() {
            self.omega_wg
        } else {
            self.omega_ext
        }
    }

    /// Ω_ext / Ω_wg, required to be real.
    pub fn real_ratio(&self) -> Result<f64> {
        if let Some(r) = self.ratio {
            return Ok(r);
        }
        if self.omega_wg.norm() == 0.0 {
            return Err(Error::invalid(
                "omega_wg",
                "ratio needs a non-zero guided drive",
            ));
        }
        let r = self.omega_ext / self.omega_wg;
        if r.im.abs() > 1e-12 * r.norm().max(1.0) {
            return Err(Error::Unsupported(format!(
                "complex drive ratio Omega_ext/Omega_wg = {r}: only in-phase or anti-phase drives are modelled"
            )));
        }
        Ok(r.re)
    }

    pub fn flags(&self) -> Flags {
        let mut flags = Flags::default();
        let max = match self.mode {
            DriveMode::Waveguide => self.omega_wg.norm(),
            DriveMode::Combined => self.omega_wg.norm().max(self.omega_ext.norm()),
            _ => self.omega_ext.norm(),
        };
        if max > WEAK_DRIVE_LIMIT {
            flags.insert(ValidityFlag::StrongDrive);
        }
        flags
    }

    pub(crate) fn require_mode(&self, mode: DriveMode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::invalid(
                "mode",
                format!("expected {mode} drive, got {}", self.mode),
            ));
        }
        Ok(())
    }

    pub(crate) fn require_emitters(&self) -> Result<usize> {
        if self.n_emitters == 0 {
            return Err(Error::invalid("n_emitters", "must be at least 1"));
        }
        Ok(self.n_emitters)
    }
}

/// Physical units carried by a complex amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    /// √Γ: single-photon amplitudes such as α_in, α_sc, α_out.
    SqrtFlux,
    /// Γ: two-photon amplitudes in the time domain, ψ(τ).
    Flux,
    /// Two-photon spectra ψ(ω) and the coefficients g, t.
    Dimensionless,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexAmplitude {
    pub value: Complex64,
    pub units: Units,
}

impl ComplexAmplitude {
    pub fn new(value: Complex64, units: Units) -> Self {
        Self { value, units }
    }
}
