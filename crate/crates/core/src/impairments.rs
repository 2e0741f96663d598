//! Transmitter and receiver distortion functions.
//!
//! Two impairment families are modeled. The additive family perturbs the
//! signal with Gaussian distortion noise at both ends of the link; the
//! realistic family applies a Saleh power-amplifier nonlinearity per transmit
//! antenna and a low-resolution uniform ADC per receive antenna. A
//! [`Scenario`] bundles one family with its parameters and drives the full
//! transmit-channel-receive chain.

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::rng::{sample_complex_gaussian, RngStream};
use crate::{Error, Result};

/// Additive Gaussian distortion levels at the transmitter and receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditiveImpairment {
    pub kappa_tx: f64,
    pub kappa_rx: f64,
}

impl AdditiveImpairment {
    pub fn new(kappa_tx: f64, kappa_rx: f64) -> Result<Self> {
        if kappa_tx < 0.0 || kappa_rx < 0.0 {
            return Err(Error::invalid("distortion levels must be nonnegative"));
        }
        Ok(AdditiveImpairment { kappa_tx, kappa_rx })
    }
}

impl Default for AdditiveImpairment {
    /// kappa_tx = kappa_rx = 0.05^2.
    fn default() -> Self {
        AdditiveImpairment {
            kappa_tx: 0.0025,
            kappa_rx: 0.0025,
        }
    }
}

/// Saleh AM/AM + AM/PM power-amplifier model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SalehPa {
    pub alpha_a: f64,
    pub eps_a: f64,
    pub alpha_phi: f64,
    pub eps_phi: f64,
}

impl SalehPa {
    pub fn new(alpha_a: f64, eps_a: f64, alpha_phi: f64, eps_phi: f64) -> Result<Self> {
        if alpha_a <= 0.0 {
            return Err(Error::invalid("amplitude gain must be positive"));
        }
        if eps_a < 0.0 || eps_phi < 0.0 {
            return Err(Error::invalid(
                "saturation parameters must keep 1 + eps |x|^2 positive",
            ));
        }
        Ok(SalehPa {
            alpha_a,
            eps_a,
            alpha_phi,
            eps_phi,
        })
    }

    /// Output magnitude `alpha_a |x| / (1 + eps_a |x|^2)`.
    pub fn am_am(&self, magnitude: f64) -> f64 {
        self.alpha_a * magnitude / (1.0 + self.eps_a * magnitude * magnitude)
    }

    /// Phase rotation `alpha_phi |x|^2 / (1 + eps_phi |x|^2)`.
    pub fn am_pm(&self, magnitude: f64) -> f64 {
        self.alpha_phi * magnitude * magnitude / (1.0 + self.eps_phi * magnitude * magnitude)
    }
}

impl Default for SalehPa {
    fn default() -> Self {
        SalehPa {
            alpha_a: 1.96,
            eps_a: 0.99,
            alpha_phi: 2.53,
            eps_phi: 2.82,
        }
    }
}

/// Applies the Saleh model to one complex sample.
pub fn saleh_pa(x: Complex64, pa: &SalehPa) -> Complex64 {
    let magnitude = x.norm();
    Complex64::from_polar(pa.am_am(magnitude), x.arg() + pa.am_pm(magnitude))
}

/// Applies the Saleh model elementwise.
pub fn saleh_pa_vec(x: &ComplexVector, pa: &SalehPa) -> ComplexVector {
    ComplexVector::from_fn(x.len(), |i| saleh_pa(x[i], pa))
}

/// Uniform B-bit quantizer applied independently to I and Q.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformAdc {
    bits: u32,
    levels: Vec<f64>,
    boundaries: Vec<f64>,
}

impl UniformAdc {
    /// Uniform grid `y_k = (k - 1 - (2^B - 1)/2) * step` for `k = 1..2^B`,
    /// boundaries at level midpoints.
    pub fn uniform(bits: u32, step: f64) -> Result<Self> {
        if bits == 0 || bits > 16 {
            return Err(Error::invalid(format!("unsupported ADC resolution {bits}")));
        }
        if step <= 0.0 {
            return Err(Error::invalid("quantization step must be positive"));
        }
        let n = 1usize << bits;
        let offset = (n as f64 - 1.0) / 2.0;
        let levels: Vec<f64> = (0..n).map(|k| (k as f64 - offset) * step).collect();
        let boundaries = levels
            .windows(2)
            .map(|w| (w[0] + w[1]) / 2.0)
            .collect();
        Ok(UniformAdc {
            bits,
            levels,
            boundaries,
        })
    }

    /// The 3-bit grid with levels `-1.75, -1.25, ..., 1.75`.
    pub fn b3() -> Self {
        UniformAdc::uniform(3, 0.5).expect("fixed 3-bit grid is valid")
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Quantizes one real value: `v` maps to level `k` when
    /// `b_{k-1} < v <= b_k`, with the outermost boundaries at infinity.
    pub fn quantize_real(&self, v: f64) -> f64 {
        let idx = self.boundaries.partition_point(|&b| b < v);
        self.levels[idx]
    }
}

/// Quantizes real and imaginary parts independently.
pub fn adc_quantize(r: Complex64, adc: &UniformAdc) -> Complex64 {
    Complex64::new(adc.quantize_real(r.re), adc.quantize_real(r.im))
}

/// Elementwise quantization of a received vector.
pub fn adc_quantize_vec(r: &ComplexVector, adc: &UniformAdc) -> ComplexVector {
    ComplexVector::from_fn(r.len(), |i| adc_quantize(r[i], adc))
}

/// Adds transmitter distortion noise `CN(0, kappa_tx I)`.
pub fn additive_tx(rng: &mut RngStream, x: &ComplexVector, kappa_tx: f64) -> Result<ComplexVector> {
    let noise = sample_complex_gaussian(rng, x.len(), kappa_tx)?;
    Ok(x.add(&noise))
}

/// Adds receiver distortion noise `CN(0, kappa_rx H H^H)`, realized as
/// `H w` with `w ~ CN(0, kappa_rx I)` so the covariance is exact by
/// construction.
pub fn additive_rx(
    rng: &mut RngStream,
    r: &ComplexVector,
    h: &ComplexMatrix,
    kappa_rx: f64,
) -> Result<ComplexVector> {
    if h.rows() != r.len() {
        return Err(Error::invalid(format!(
            "received vector has {} entries but the channel has {} rows",
            r.len(),
            h.rows()
        )));
    }
    let w = sample_complex_gaussian(rng, h.cols(), kappa_rx)?;
    Ok(r.add(&h.mul_vec(&w)))
}

/// One end-to-end transmit-channel-receive configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    /// `y = H x + z`.
    Ideal,
    /// `y = H (x + eta_tx) + eta_rx + z`.
    Additive(AdditiveImpairment),
    /// `y = ADC(scale * (H PA(x) + z))`.
    Realistic {
        pa: SalehPa,
        adc: UniformAdc,
        /// Receiver gain ahead of the ADC; 1 feeds the fixed grid directly.
        scale: f64,
    },
}

impl Scenario {
    pub fn realistic_default() -> Self {
        Scenario::Realistic {
            pa: SalehPa::default(),
            adc: UniformAdc::b3(),
            scale: 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Ideal => "ideal",
            Scenario::Additive(_) => "additive",
            Scenario::Realistic { .. } => "realistic",
        }
    }
}

/// Pushes one symbol vector through the configured distortion chain.
pub fn apply_scenario(
    rng: &mut RngStream,
    scenario: &Scenario,
    x: &ComplexVector,
    h: &ComplexMatrix,
    sigma2: f64,
) -> Result<ComplexVector> {
    if h.cols() != x.len() {
        return Err(Error::invalid(format!(
            "symbol vector has {} entries but the channel has {} columns",
            x.len(),
            h.cols()
        )));
    }
    match scenario {
        Scenario::Ideal => {
            let z = sample_complex_gaussian(rng, h.rows(), sigma2)?;
            Ok(h.mul_vec(x).add(&z))
        }
        Scenario::Additive(imp) => {
            let s = additive_tx(rng, x, imp.kappa_tx)?;
            let r = additive_rx(rng, &h.mul_vec(&s), h, imp.kappa_rx)?;
            let z = sample_complex_gaussian(rng, h.rows(), sigma2)?;
            Ok(r.add(&z))
        }
        Scenario::Realistic { pa, adc, scale } => {
            let s = saleh_pa_vec(x, pa);
            let z = sample_complex_gaussian(rng, h.rows(), sigma2)?;
            let r = h.mul_vec(&s).add(&z).scale(*scale);
            Ok(adc_quantize_vec(&r, adc))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_kappa_is_identity() {
        let mut rng = RngStream::new(1, 0);
        let x = sample_complex_gaussian(&mut rng, 4, 1.0).unwrap();
        let out = additive_tx(&mut rng, &x, 0.0).unwrap();
        assert_eq!(out, x);
        let h = ComplexMatrix::identity(4);
        let out = additive_rx(&mut rng, &x, &h, 0.0).unwrap();
        assert_eq!(out, x);
    }

    #[test]
    fn tx_distortion_variance_and_independence() {
        let mut rng = RngStream::new(2, 0);
        let kappa = 0.0025;
        let n = 100_000;
        let x = ComplexVector::from_fn(1, |_| Complex64::new(0.7, -0.3));
        let mut power = 0.0;
        let mut cross = Complex64::new(0.0, 0.0);
        for _ in 0..n {
            let out = additive_tx(&mut rng, &x, kappa).unwrap();
            let d = out[0] - x[0];
            power += d.norm_sqr();
            cross += d * x[0].conj();
        }
        let power = power / n as f64;
        assert!(
            (0.00245..=0.00255).contains(&power),
            "distortion variance {power}"
        );
        let corr = (cross / n as f64).norm() / (kappa.sqrt() * x[0].norm());
        assert!(corr < 0.01, "cross-correlation {corr}");
    }

    #[test]
    fn rx_distortion_covariance_matches_channel_gram() {
        let mut rng = RngStream::new(3, 0);
        let h = ComplexMatrix::from_fn(3, 2, |_, _| rng.complex_gaussian(1.0));
        let kappa = 0.04;
        let want = h.mul_mat(&h.hermitian()).scale(kappa);
        let n = 100_000;
        let zero = ComplexVector::zeros(3);
        let mut acc = ComplexMatrix::zeros(3, 3);
        for _ in 0..n {
            let eta = additive_rx(&mut rng, &zero, &h, kappa).unwrap();
            acc = acc.add(&ComplexMatrix::from_fn(3, 3, |r, c| {
                eta[r] * eta[c].conj()
            }));
        }
        let got = acc.scale(1.0 / n as f64);
        let scale = want.max_abs();
        assert!(
            got.sub(&want).max_abs() < 0.03 * scale,
            "covariance error {}",
            got.sub(&want).max_abs() / scale
        );
    }

    #[test]
    fn rx_dimension_mismatch_rejected() {
        let mut rng = RngStream::new(3, 1);
        let h = ComplexMatrix::identity(3);
        let r = ComplexVector::zeros(2);
        assert!(additive_rx(&mut rng, &r, &h, 0.1).is_err());
    }

    #[test]
    fn saleh_reference_points() {
        let pa = SalehPa::default();
        assert_eq!(saleh_pa(Complex64::new(0.0, 0.0), &pa), Complex64::new(0.0, 0.0));

        // |x| = 1: magnitude 1.96/1.99, phase shift 2.53/3.82.
        let out = saleh_pa(Complex64::new(1.0, 0.0), &pa);
        assert!((out.norm() - 0.9849246231155779).abs() < 1e-12);
        assert!((out.arg() - 0.6623036649214659).abs() < 1e-12);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let out = saleh_pa(Complex64::new(s, s), &pa);
        assert!((out.norm() - 0.9849246231155779).abs() < 1e-12);
        let want_phase = std::f64::consts::FRAC_PI_4 + 0.6623036649214659;
        assert!((out.arg() - want_phase).abs() < 1e-12);
    }

    #[test]
    fn saleh_phase_shift_depends_only_on_magnitude() {
        let pa = SalehPa::default();
        for mag in [0.2, 0.7071067811865476, 1.3] {
            let shift0 = saleh_pa(Complex64::from_polar(mag, 0.4), &pa).arg() - 0.4;
            for phase in [-2.0, 0.0, 1.1] {
                let out = saleh_pa(Complex64::from_polar(mag, phase), &pa);
                let mut shift = out.arg() - phase;
                while shift > std::f64::consts::PI {
                    shift -= std::f64::consts::TAU;
                }
                while shift < -std::f64::consts::PI {
                    shift += std::f64::consts::TAU;
                }
                assert!((shift - shift0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn adc_b3_table() {
        let adc = UniformAdc::b3();
        let want_levels = [-1.75, -1.25, -0.75, -0.25, 0.25, 0.75, 1.25, 1.75];
        let want_bounds = [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5];
        assert_eq!(adc.levels(), &want_levels);
        assert_eq!(adc.boundaries(), &want_bounds);
    }

    #[test]
    fn adc_reference_points() {
        let adc = UniformAdc::b3();
        assert_eq!(adc.quantize_real(0.1), 0.25);
        assert_eq!(adc.quantize_real(10.0), 1.75);
        assert_eq!(adc.quantize_real(-10.0), -1.75);
        // A value on a boundary belongs to the level below it.
        assert_eq!(adc.quantize_real(0.0), -0.25);
        assert_eq!(adc.quantize_real(0.5), 0.25);
    }

    #[test]
    fn adc_idempotent_and_monotone() {
        let adc = UniformAdc::b3();
        let mut prev = f64::NEG_INFINITY;
        let mut v = -3.0;
        while v <= 3.0 {
            let q = adc.quantize_real(v);
            assert_eq!(adc.quantize_real(q), q, "not idempotent at {v}");
            assert!(q >= prev, "not monotone at {v}");
            prev = q;
            v += 0.001;
        }
    }

    #[test]
    fn ideal_scenario_noise_free_is_exact() {
        let mut rng = RngStream::new(4, 0);
        let h = ComplexMatrix::from_fn(3, 2, |_, _| rng.complex_gaussian(1.0));
        let x = sample_complex_gaussian(&mut rng, 2, 1.0).unwrap();
        let y = apply_scenario(&mut rng, &Scenario::Ideal, &x, &h, 0.0).unwrap();
        assert!(y.sub(&h.mul_vec(&x)).norm_sqr() < 1e-24);
    }

    #[test]
    fn additive_scenario_collapses_to_ideal_without_impairments() {
        let mut rng = RngStream::new(4, 1);
        let h = ComplexMatrix::from_fn(3, 2, |_, _| rng.complex_gaussian(1.0));
        let x = sample_complex_gaussian(&mut rng, 2, 1.0).unwrap();
        let scenario = Scenario::Additive(AdditiveImpairment::new(0.0, 0.0).unwrap());
        let y = apply_scenario(&mut rng, &scenario, &x, &h, 0.0).unwrap();
        assert!(y.sub(&h.mul_vec(&x)).norm_sqr() < 1e-24);
    }

    #[test]
    fn realistic_scalar_chain_matches_composed_oracles() {
        let mut rng = RngStream::new(4, 2);
        let h = ComplexMatrix::identity(1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = ComplexVector::from_vec(vec![Complex64::new(s, s)]).unwrap();
        let scenario = Scenario::realistic_default();
        let y = apply_scenario(&mut rng, &scenario, &x, &h, 0.0).unwrap();
        let want = adc_quantize(saleh_pa(x[0], &SalehPa::default()), &UniformAdc::b3());
        assert_eq!(y[0], want);
    }

    #[test]
    fn additive_effective_noise_covariance() {
        // z_eff = H eta_tx + eta_rx + z has covariance
        // (kappa_tx + kappa_rx) H H^H + sigma2 I.
        let mut rng = RngStream::new(5, 0);
        let h = ComplexMatrix::from_fn(3, 2, |_, _| rng.complex_gaussian(1.0));
        let imp = AdditiveImpairment::new(0.03, 0.05).unwrap();
        let sigma2 = 0.4;
        let want = h
            .mul_mat(&h.hermitian())
            .scale(imp.kappa_tx + imp.kappa_rx)
            .add(&ComplexMatrix::identity(3).scale(sigma2));
        let x = ComplexVector::zeros(2);
        let scenario = Scenario::Additive(imp);
        let n = 100_000;
        let mut acc = ComplexMatrix::zeros(3, 3);
        for _ in 0..n {
            let y = apply_scenario(&mut rng, &scenario, &x, &h, sigma2).unwrap();
            acc = acc.add(&ComplexMatrix::from_fn(3, 3, |r, c| y[r] * y[c].conj()));
        }
        let got = acc.scale(1.0 / n as f64);
        let scale = want.max_abs();
        assert!(
            got.sub(&want).max_abs() < 0.03 * scale,
            "covariance error {}",
            got.sub(&want).max_abs() / scale
        );
    }
}
