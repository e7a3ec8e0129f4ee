//! Γ-spectra: unions of sector spectra, their comparison, heat traces and
//! leading heat-trace coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::ClosedForm;
use crate::flat_orbifold::fixtures::{SingularSetFixture, StratumShape};
use crate::flat_orbifold::{FlatSector, DEFAULT_VECTOR_BUDGET};
use crate::gamma_hom::GroupPresentation;
use crate::orthogonal_action::{FixedSetKind, SectorDescriptor};
use crate::sphere_spectrum::{sector_spectrum, sphere_eigenvalue, SpectrumSegment};

/// `vol(S^d) = 2π^{(d+1)/2} / Γ((d+1)/2)`, exactly.
pub fn unit_sphere_volume(d: usize) -> ClosedForm {
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    if d % 2 == 1 {
        // 2π^m / (m−1)!
        let m = d.div_ceil(2);
        ClosedForm::monomial(BigRational::new(2.into(), fact(m - 1)), 1, m as i32)
    } else {
        // 2^{2k+1} k! π^k / (2k)!
        let k = d / 2;
        let num = BigInt::from(2).pow(2 * k as u32 + 1) * fact(k);
        ClosedForm::monomial(BigRational::new(num, fact(2 * k)), 1, k as i32)
    }
}

/// One sector's share of a Γ-spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct SectorContribution {
    pub label: String,
    pub twisted: bool,
    pub dimension: usize,
    pub components: usize,
    /// Riemannian volume of the sector orbifold, when known.
    pub volume: Option<ClosedForm>,
    pub spectrum: Option<SpectrumSegment>,
    /// Why `spectrum` is missing.
    pub unsupported: Option<String>,
}

/// Multiset union of sector spectra below a common cutoff.
#[derive(Clone, Debug, Serialize)]
pub struct GammaSpectrum {
    pub contributions: Vec<SectorContribution>,
    pub merged: SpectrumSegment,
    /// Laplace eigenvalue = `scale · label` (`4π²` for flat spectra labeled by `μ`).
    pub eigenvalue_scale: ClosedForm,
}

fn sphere_k_max(n: usize, cutoff: i64) -> usize {
    let mut k = 0;
    while sphere_eigenvalue(k, n) < cutoff {
        k += 1;
    }
    k
}

impl GammaSpectrum {
    pub fn new(
        contributions: Vec<SectorContribution>,
        cutoff: ClosedForm,
        eigenvalue_scale: ClosedForm,
    ) -> Self {
        let mut merged = SpectrumSegment::empty(cutoff.clone());
        for c in &contributions {
            if let Some(s) = &c.spectrum {
                merged = merged.union(&s.truncate(&cutoff));
            }
        }
        GammaSpectrum {
            contributions,
            merged,
            eigenvalue_scale,
        }
    }

    /// Sphere or frame-space sectors; eigenvalues up to `cutoff` inclusive.
    pub fn from_linear_sectors(
        sectors: &[SectorDescriptor],
        labels: &[String],
        cutoff: i64,
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (s, label) in sectors.iter().zip(labels) {
            let order = s.restricted.order();
            let (dimension, volume, spectrum, unsupported) = match s.fixed_set.kind {
                FixedSetKind::Sphere { dim } => {
                    let k_max = sphere_k_max(dim + 1, cutoff);
                    let spec = sector_spectrum(s, k_max)?.truncate(&ClosedForm::int(cutoff));
                    let vol =
                        unit_sphere_volume(dim).scale(&BigRational::new(1.into(), order.into()));
                    (dim, Some(vol), Some(spec), None)
                }
                _ => {
                    let why = match sector_spectrum(s, 0) {
                        Err(Error::UnsupportedSector(why)) => why,
                        Err(e) => return Err(e),
                        Ok(_) => unreachable!("only sphere sectors have spectra"),
                    };
                    (
                        s.fixed_set.manifold_dimension.unwrap_or(0),
                        None,
                        None,
                        Some(why),
                    )
                }
            };
            out.push(SectorContribution {
                label: label.clone(),
                twisted: !s.is_nontwisted,
                dimension,
                components: s.components(),
                volume,
                spectrum,
                unsupported,
            });
        }
        Ok(Self::new(out, ClosedForm::int(cutoff), ClosedForm::int(1)))
    }

    /// Flat sectors, labeled by `μ ≤ mu_max`.
    pub fn from_flat_sectors(sectors: &[FlatSector], mu_max: &BigRational) -> Result<Self> {
        let mut out = Vec::new();
        for s in sectors {
            let vol_torus = s
                .summary()
                .map(|f| f.component_volume)
                .unwrap_or_else(|| ClosedForm::int(1));
            // each component is a torus divided by its effective action
            let volume = s.components().iter().fold(ClosedForm::zero(), |acc, c| {
                acc.add(&vol_torus.scale(&BigRational::new(1.into(), c.action.len().max(1).into())))
            });
            out.push(SectorContribution {
                label: s.label(),
                twisted: !s.is_nontwisted,
                dimension: s.dimension(),
                components: s.component_count(),
                volume: Some(volume),
                spectrum: Some(s.spectrum(mu_max, DEFAULT_VECTOR_BUDGET)?),
                unsupported: None,
            });
        }
        let four_pi2 = ClosedForm::monomial(BigRational::from_integer(4.into()), 1, 2);
        Ok(Self::new(
            out,
            ClosedForm::rational(mu_max.clone()),
            four_pi2,
        ))
    }

    /// Sectors read from singular-set data. The nontwisted sector is carried
    /// without spectrum or volume.
    pub fn from_fixture(
        f: &SingularSetFixture,
        gamma: &GroupPresentation,
        cutoff: &ClosedForm,
    ) -> Result<Self> {
        let mut out = vec![SectorContribution {
            label: "nontwisted".into(),
            twisted: false,
            dimension: f.dimension,
            components: 1,
            volume: None,
            spectrum: None,
            unsupported: Some("singular-set data does not describe the nontwisted sector".into()),
        }];
        let c = cutoff.to_f64().max(0.0);
        for (i, s) in f.twisted_sectors(gamma)?.into_iter().enumerate() {
            // modes k with (2πk/ℓ)² ≤ c, resp. (πk/ℓ)²
            let per = match s.shape {
                StratumShape::Segment => std::f64::consts::PI,
                _ => 2.0 * std::f64::consts::PI,
            };
            let k_max = (c.sqrt() * s.volume.to_f64() / per).ceil() as u64 + 1;
            // a point's spectrum {0} is complete at every cutoff
            let computed = if s.dimension == 0 {
                Ok(SpectrumSegment::new(
                    [(ClosedForm::zero(), 1)],
                    cutoff.clone(),
                ))
            } else {
                s.spectrum(k_max)
            };
            let (spectrum, unsupported) = match computed {
                Ok(sp) => (Some(sp.truncate(cutoff)), None),
                Err(Error::UnsupportedSector(why)) => (None, Some(why)),
                Err(e) => return Err(e),
            };
            let label = s
                .charts
                .first()
                .map(|(id, copy, _)| format!("{id}#{copy}/{i}"))
                .unwrap_or_default();
            out.push(SectorContribution {
                label,
                twisted: true,
                dimension: s.dimension,
                components: 1,
                volume: Some(s.volume.clone()),
                spectrum,
                unsupported,
            });
        }
        Ok(Self::new(out, cutoff.clone(), ClosedForm::int(1)))
    }

    pub fn cutoff(&self) -> &ClosedForm {
        self.merged.cutoff()
    }

    /// Some sector had no spectrum.
    pub fn is_partial(&self) -> bool {
        self.contributions.iter().any(|c| c.spectrum.is_none())
    }

    /// Number of connected sector components: the multiplicity of 0.
    pub fn zero_multiplicity(&self) -> usize {
        self.contributions.iter().map(|c| c.components).sum()
    }

    /// Union of the twisted contributions only.
    pub fn twisted_part(&self) -> SpectrumSegment {
        self.contributions
            .iter()
            .filter(|c| c.twisted)
            .filter_map(|c| c.spectrum.as_ref())
            .fold(SpectrumSegment::empty(self.cutoff().clone()), |acc, s| {
                acc.union(&s.truncate(self.cutoff()))
            })
    }

    /// Re-adds every sector spectrum and checks it against the merged one.
    pub fn check_union(&self) -> Result<()> {
        let mut sums: BTreeMap<&ClosedForm, u64> = BTreeMap::new();
        for s in self
            .contributions
            .iter()
            .filter_map(|c| c.spectrum.as_ref())
        {
            for (l, m) in s.entries().iter().filter(|(l, _)| l <= self.cutoff()) {
                *sums.entry(l).or_insert(0) += m;
            }
        }
        let merged: BTreeMap<&ClosedForm, u64> =
            self.merged.entries().iter().map(|(l, m)| (l, *m)).collect();
        if sums != merged {
            return Err(Error::InternalConsistency(
                "merged spectrum differs from the sum of its sectors".into(),
            ));
        }
        if !self.is_partial()
            && self.merged.multiplicity(&ClosedForm::zero()) as usize != self.zero_multiplicity()
        {
            return Err(Error::InternalConsistency(
                "multiplicity of 0 differs from the component count".into(),
            ));
        }
        Ok(())
    }

    /// `Σ e^{−λt}` over the merged segment.
    pub fn heat_trace(&self, t: f64) -> Result<HeatTraceValue> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "heat trace needs t > 0, got {t}"
            )));
        }
        let scale = self.eigenvalue_scale.to_f64();
        let mut value = 0.0;
        let mut terms = 0u64;
        for (l, m) in self.merged.entries() {
            value += *m as f64 * (-l.to_f64() * scale * t).exp();
            terms += m;
        }
        let cutoff_weight = (-self.cutoff().to_f64() * scale * t).exp();
        Ok(HeatTraceValue {
            value,
            terms,
            cutoff_weight,
            truncated: cutoff_weight > 1e-12,
        })
    }

    pub fn leading_asymptotics(&self) -> HeatTraceExpansion {
        let mut by_dim: BTreeMap<usize, ClosedForm> = BTreeMap::new();
        let mut unknown = Vec::new();
        for c in &self.contributions {
            match &c.volume {
                Some(v) => {
                    let e = by_dim.entry(c.dimension).or_insert_with(ClosedForm::zero);
                    *e = e.add(v);
                }
                None => unknown.push(c.label.clone()),
            }
        }
        HeatTraceExpansion {
            terms: by_dim.into_iter().rev().collect(),
            unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatTraceValue {
    pub value: f64,
    /// Eigenvalues (with multiplicity) summed.
    pub terms: u64,
    /// `e^{−Λt}` at the cutoff `Λ`: size of the first omitted term.
    pub cutoff_weight: f64,
    pub truncated: bool,
}

/// Leading heat-trace coefficients: `(d, c)` contributes `c (4πt)^{−d/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeatTraceExpansion {
    /// Highest dimension first.
    pub terms: Vec<(usize, ClosedForm)>,
    /// Sectors whose volume is not known.
    pub unknown: Vec<String>,
}

impl HeatTraceExpansion {
    pub fn coefficient(&self, d: usize) -> ClosedForm {
        self.terms
            .iter()
            .find(|(k, _)| *k == d)
            .map_or_else(ClosedForm::zero, |(_, c)| c.clone())
    }

    /// Dimension and volume as read off the top term.
    pub fn top(&self) -> Option<(usize, &ClosedForm)> {
        self.terms.first().map(|(d, c)| (*d, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SpectrumVerdict {
    /// Equal up to `cutoff`; `partial` if some sector had no spectrum.
    Equal { cutoff: ClosedForm, partial: bool },
    Differ {
        eigenvalue: ClosedForm,
        left: u64,
        right: u64,
    },
}

/// First eigenvalue below both cutoffs where the multiplicities differ.
pub fn compare_segments(a: &SpectrumSegment, b: &SpectrumSegment) -> SpectrumVerdict {
    match crate::flat_orbifold::first_disagreement(a, b) {
        Some((eigenvalue, left, right)) => SpectrumVerdict::Differ {
            eigenvalue,
            left,
            right,
        },
        None => SpectrumVerdict::Equal {
            cutoff: if a.cutoff() < b.cutoff() {
                a.cutoff().clone()
            } else {
                b.cutoff().clone()
            },
            partial: false,
        },
    }
}

pub fn compare_gamma_spectra(a: &GammaSpectrum, b: &GammaSpectrum) -> Result<SpectrumVerdict> {
    if a.eigenvalue_scale != b.eigenvalue_scale {
        return Err(Error::InvalidParameter(
            "spectra use different eigenvalue labels".into(),
        ));
    }
    Ok(match compare_segments(&a.merged, &b.merged) {
        SpectrumVerdict::Equal { cutoff, .. } => SpectrumVerdict::Equal {
            cutoff,
            partial: a.is_partial() || b.is_partial(),
        },
        d => d,
    })
}

/// Minimum dimension over singular strata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowestStratum {
    Manifold,
    Dimension(usize),
}

impl LowestStratum {
    pub fn of(dims: impl IntoIterator<Item = usize>) -> Self {
        dims.into_iter()
            .min()
            .map_or(LowestStratum::Manifold, LowestStratum::Dimension)
    }
}

/// Isospectral orbifolds with a common manifold cover have equal lowest
/// stratum dimensions; `Some` is a certificate that two candidates are not
/// such a pair.
pub fn distinguish_by_lowest_stratum(
    a: LowestStratum,
    b: LowestStratum,
) -> Option<(LowestStratum, LowestStratum)> {
    (a != b).then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{constructions::sign_generators, generate_group};
    use crate::gamma_hom::parse_gamma;
    use crate::orthogonal_action::{sector_list, SphereAction};

    #[test]
    fn sphere_volumes() {
        assert_eq!(unit_sphere_volume(0), ClosedForm::int(2));
        assert_eq!(
            unit_sphere_volume(1),
            ClosedForm::pi_power(1).scale(&BigRational::from_integer(2.into()))
        );
        assert_eq!(
            unit_sphere_volume(2),
            ClosedForm::pi_power(1).scale(&BigRational::from_integer(4.into()))
        );
        assert_eq!(
            unit_sphere_volume(3),
            ClosedForm::pi_power(2).scale(&BigRational::from_integer(2.into()))
        );
        let v4 = unit_sphere_volume(4).to_f64();
        assert!((v4 - 8.0 * std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-12);
    }

    fn spectrum_of(gens: &[&[usize]], n: usize, gamma: &str, cutoff: i64) -> GammaSpectrum {
        let g = generate_group(n, sign_generators(n, gens), 1000).unwrap();
        let action = SphereAction::new(g.clone()).unwrap();
        let s = sector_list(&action, &parse_gamma(gamma).unwrap(), 1_000_000).unwrap();
        let labels: Vec<String> = s.iter().map(|x| x.label(&g)).collect();
        GammaSpectrum::from_linear_sectors(&s, &labels, cutoff).unwrap()
    }

    #[test]
    fn free_action_has_only_the_nontwisted_sector() {
        // antipodal map on S²
        let s = spectrum_of(&[&[1, 2, 3]], 3, "Z", 20);
        assert_eq!(s.contributions.len(), 1);
        assert_eq!(s.zero_multiplicity(), 1);
        s.check_union().unwrap();
        let top = s.leading_asymptotics();
        assert_eq!(
            top.top(),
            Some((
                2,
                &ClosedForm::pi_power(1).scale(&BigRational::from_integer(2.into()))
            ))
        );
    }

    #[test]
    fn reflection_sectors_and_heat_trace() {
        // S² mod a reflection: the mirror circle is the twisted sector
        let s = spectrum_of(&[&[3]], 3, "Z", 30);
        assert_eq!(s.zero_multiplicity(), 2);
        s.check_union().unwrap();
        let lead = s.leading_asymptotics();
        assert_eq!(
            lead.coefficient(1),
            ClosedForm::pi_power(1).scale(&BigRational::from_integer(2.into()))
        );
        let h = s.heat_trace(50.0).unwrap();
        assert!((h.value - 2.0).abs() < 1e-9 && !h.truncated);
        assert!(s.heat_trace(0.0).is_err());
        let h1 = s.heat_trace(0.1).unwrap().value;
        let h2 = s.heat_trace(0.2).unwrap().value;
        assert!(h1 > h2 && h2 >= 2.0);
    }

    #[test]
    fn comparator_is_antisymmetric() {
        let a = spectrum_of(&[&[3]], 3, "Z", 12);
        let b = spectrum_of(&[&[1, 2, 3]], 3, "Z", 12);
        let ab = compare_gamma_spectra(&a, &b).unwrap();
        let ba = compare_gamma_spectra(&b, &a).unwrap();
        match (ab, ba) {
            (
                SpectrumVerdict::Differ {
                    eigenvalue: e1,
                    left: l1,
                    right: r1,
                },
                SpectrumVerdict::Differ {
                    eigenvalue: e2,
                    left: l2,
                    right: r2,
                },
            ) => {
                assert_eq!((e1, l1, r1), (e2, r2, l2));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            compare_gamma_spectra(&a, &a).unwrap(),
            SpectrumVerdict::Equal { .. }
        ));
    }

    #[test]
    fn lowest_strata() {
        assert_eq!(LowestStratum::of([]), LowestStratum::Manifold);
        let (a, b) = (LowestStratum::of([34, 18]), LowestStratum::of([34]));
        assert_eq!(
            distinguish_by_lowest_stratum(a, b),
            Some((LowestStratum::Dimension(18), LowestStratum::Dimension(34)))
        );
        assert_eq!(distinguish_by_lowest_stratum(a, a), None);
    }
}
