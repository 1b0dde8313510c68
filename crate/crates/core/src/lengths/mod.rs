//! Length spectrum of the modular surface and the zeta functions built on it.
//!
//! Primitive periodic geodesics correspond to conjugacy classes of primitive
//! hyperbolic elements, and those to primitive necklaces over `{T1, T2}`.
//! Geodesics are counted with orientation: a class and its inverse class are
//! separate entries whenever they differ.

pub mod cache;
pub mod oracle;
pub mod torus;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{enumerate_necklaces, Necklace};
use crate::error::{Error, Result};

pub use cache::{cache_dir, length_spectrum_cached, CACHE_ENV_VAR};
pub use oracle::{conjugacy_oracle, OracleReport};
pub use torus::{torus_spectrum, torus_zeros, torus_zeta, TorusSpectrum, TorusZero};

/// `2 arcosh(trace / 2)`.
pub fn geodesic_length(trace: u64) -> Result<f64> {
    if trace <= 2 {
        return Err(Error::domain(format!(
            "trace {trace} is not hyperbolic (need >= 3)"
        )));
    }
    Ok(length_of_trace(trace))
}

fn length_of_trace(trace: u64) -> f64 {
    // arcosh(t/2) = log((t + sqrt(t^2 - 4)) / 2), exact-ish for large t
    let t = trace as f64;
    2.0 * ((t + ((t - 2.0) * (t + 2.0)).sqrt()) / 2.0).ln()
}

/// All primitive geodesics of one trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrumEntry {
    pub trace: u64,
    pub length: f64,
    pub multiplicity: usize,
    #[serde(with = "necklace_strings")]
    pub necklaces: Vec<Necklace>,
}

mod necklace_strings {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::dynamics::Necklace;

    pub fn serialize<S: Serializer>(v: &[Necklace], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Necklace>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

/// Length spectrum up to `max_trace`, one entry per trace that occurs, in
/// ascending order.
pub fn length_spectrum(max_trace: u64) -> Result<Vec<LengthSpectrumEntry>> {
    if max_trace < 3 {
        return Err(Error::param(format!(
            "max_trace must be >= 3, got {max_trace}"
        )));
    }
    let mut out: Vec<LengthSpectrumEntry> = Vec::new();
    for (necklace, trace) in enumerate_necklaces(max_trace) {
        match out.last_mut() {
            Some(e) if e.trace == trace => {
                e.necklaces.push(necklace);
                e.multiplicity += 1;
            }
            _ => out.push(LengthSpectrumEntry {
                trace,
                length: length_of_trace(trace),
                multiplicity: 1,
                necklaces: vec![necklace],
            }),
        }
    }
    Ok(out)
}

/// `∏_ℓ ∏_{k=0}^{k_max} (1 - e^{-(s+k) ℓ})` over the spectrum up to
/// `max_trace`, factors taken in ascending `ℓ`, then `k`.
pub fn selberg_zeta_euler(s: Complex64, max_trace: u64, k_max: u32) -> Result<Complex64> {
    let spectrum = length_spectrum(max_trace)?;
    selberg_zeta_from(&spectrum, s, k_max)
}

/// Same product over an already computed spectrum.
pub fn selberg_zeta_from(
    spectrum: &[LengthSpectrumEntry],
    s: Complex64,
    k_max: u32,
) -> Result<Complex64> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "Euler product needs Re s > 1, got s = {s}"
        )));
    }
    if k_max < 1 {
        return Err(Error::param("k_max must be >= 1"));
    }
    let mut z = Complex64::new(1.0, 0.0);
    for entry in spectrum {
        let mut per_length = Complex64::new(1.0, 0.0);
        for k in 0..=k_max {
            per_length *= 1.0 - (-(s + k as f64) * entry.length).exp();
        }
        z *= per_length.powu(entry.multiplicity as u32);
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_examples() {
        let golden = 2.0 * ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((geodesic_length(3).unwrap() - golden).abs() < 1e-15);
        assert!((geodesic_length(3).unwrap() - 1.9248473002).abs() < 1e-10);
        assert!((geodesic_length(4).unwrap() - 2.0 * 2f64.acosh()).abs() < 1e-15);
        assert!((geodesic_length(4).unwrap() - 2.6339157938).abs() < 1e-10);
        assert!(geodesic_length(2).is_err());
        for t in 3..100 {
            assert!(geodesic_length(t + 1).unwrap() > geodesic_length(t).unwrap());
        }
    }

    #[test]
    fn cosh_invariant() {
        for t in [3u64, 4, 7, 50, 1000, 123_456] {
            let l = geodesic_length(t).unwrap();
            let back = (l / 2.0).cosh() * 2.0;
            assert!((back - t as f64).abs() <= 1e-13 * t as f64, "{t}: {back}");
        }
    }

    #[test]
    fn spectrum_at_trace_three() {
        let s = length_spectrum(3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].trace, 3);
        assert_eq!(s[0].multiplicity, 1);
        assert_eq!(s[0].necklaces[0].to_string(), "12");
        assert!(length_spectrum(2).is_err());
    }

    #[test]
    fn entries_are_consistent() {
        for e in length_spectrum(30).unwrap() {
            assert_eq!(e.multiplicity, e.necklaces.len());
            let mut sorted = e.necklaces.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), e.necklaces.len());
            for n in &e.necklaces {
                assert_eq!(n.matrix().trace(), e.trace as u128);
            }
        }
    }

    #[test]
    fn euler_product_two_factors() {
        let l0 = geodesic_length(3).unwrap();
        let want = (1.0 - (-2.0 * l0).exp()) * (1.0 - (-3.0 * l0).exp());
        let got = selberg_zeta_euler(Complex64::new(2.0, 0.0), 3, 1).unwrap();
        assert!((got.re - want).abs() < 1e-15 && got.im == 0.0);
        assert!((got.re - 0.97566).abs() < 1e-4);
        assert!(selberg_zeta_euler(Complex64::new(1.0, 3.0), 10, 2).is_err());
    }

    #[test]
    fn euler_product_decreases_and_stabilizes() {
        let s = Complex64::new(2.0, 0.0);
        let spectrum = length_spectrum(400).unwrap();
        let upto = |t: u64| {
            let part: Vec<_> = spectrum.iter().filter(|e| e.trace <= t).cloned().collect();
            selberg_zeta_from(&part, s, 30).unwrap().re
        };
        let mut last = 1.0;
        for t in [3, 5, 10, 40, 100, 300, 400] {
            let z = upto(t);
            assert!(z < last && z > 0.0);
            last = z;
        }
        assert!((upto(400) - upto(300)).abs() < 1e-6);
    }
}
