//! Orbifolds described only through their singular sets: strata with abelian
//! isotropy groups, glued along incidences. Twisted sectors are read off
//! locally, one chart per stratum and nontrivial homomorphism, and patched
//! along the incidences.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{circle_spectrum, CircleKind};
use crate::error::{Error, Result};
use crate::exactnum::ClosedForm;
use crate::gamma_hom::GroupPresentation;
use crate::sphere_spectrum::SpectrumSegment;

/// `Z_{n_1} × … × Z_{n_k}`, parsed from tags like `Z4`, `Z2xZ2` or `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn parse(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        if tag == "1" || tag.is_empty() {
            return Ok(AbelianGroup { orders: vec![] });
        }
        let orders = tag
            .split(['x', '×'])
            .map(|f| {
                f.trim()
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad isotropy tag '{tag}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianGroup {
            orders: orders.into_iter().filter(|&n| n > 1).collect(),
        })
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out
    }

    fn add_scaled(&self, acc: &mut [u64], x: &[u64], k: i64) {
        for ((a, &b), &n) in acc.iter_mut().zip(x).zip(&self.orders) {
            *a = ((*a as i64 + k * b as i64).rem_euclid(n as i64)) as u64;
        }
    }

    /// `HOM(Γ, A)`: tuples of generator images killing every relator.
    pub fn homs(&self, gamma: &GroupPresentation) -> Vec<Vec<Vec<u64>>> {
        let elems = self.elements();
        let l = gamma.generator_count;
        let mut out = Vec::new();
        let mut idx = vec![0usize; l];
        loop {
            let images: Vec<Vec<u64>> = idx.iter().map(|&i| elems[i].clone()).collect();
            let ok = gamma.relators.iter().all(|w| {
                let mut acc = vec![0; self.orders.len()];
                for &x in w {
                    self.add_scaled(
                        &mut acc,
                        &images[x.unsigned_abs() as usize - 1],
                        x.signum() as i64,
                    );
                }
                acc.iter().all(|&a| a == 0)
            });
            if ok {
                out.push(images);
            }
            // odometer
            let mut i = 0;
            while i < l {
                idx[i] += 1;
                if idx[i] < elems.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == l {
                return out;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StratumShape {
    Point,
    Circle,
    /// A closed arc whose ends lie on other strata.
    Segment,
    Other,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumRecord {
    pub id: String,
    pub dimension: usize,
    #[serde(default = "one")]
    pub count: usize,
    pub shape: StratumShape,
    /// Length (dimension 1) or volume, as a closed form such as `1/sqrt(2)`.
    #[serde(default)]
    pub length: Option<String>,
    pub isotropy: String,
    #[serde(default)]
    pub action: Option<String>,
}

fn one() -> usize {
    1
}

/// `boundary` lies in the closure of `stratum`; `inclusion[i]` is the image
/// in the boundary isotropy of the `i`-th cyclic factor of the stratum's.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Incidence {
    pub stratum: String,
    pub boundary: String,
    pub inclusion: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularSetFixture {
    pub name: String,
    pub dimension: usize,
    #[serde(default)]
    pub note: Option<String>,
    pub strata: Vec<StratumRecord>,
    #[serde(default)]
    pub incidences: Vec<Incidence>,
}

/// One connected twisted sector assembled from stratum charts.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureSector {
    pub dimension: usize,
    pub shape: StratumShape,
    /// Total length (or volume) of the top-dimensional strata it contains.
    pub volume: ClosedForm,
    /// (stratum id, copy, homomorphism) charts patched together.
    pub charts: Vec<(String, usize, Vec<Vec<u64>>)>,
}

struct Strat {
    rec: StratumRecord,
    group: AbelianGroup,
    length: ClosedForm,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl SingularSetFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: SingularSetFixture =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("fixture: {e}")))?;
        f.validate()?;
        Ok(f)
    }

    fn strata_parsed(&self) -> Result<Vec<Strat>> {
        self.strata
            .iter()
            .map(|r| {
                let length = match &r.length {
                    Some(s) => s
                        .parse::<ClosedForm>()
                        .map_err(|e| Error::Parse(format!("length of {}: {e}", r.id)))?,
                    None => ClosedForm::zero(),
                };
                Ok(Strat {
                    rec: r.clone(),
                    group: AbelianGroup::parse(&r.isotropy)?,
                    length,
                })
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let strata = self.strata_parsed()?;
        let by_id: HashMap<&str, &Strat> = strata.iter().map(|s| (s.rec.id.as_str(), s)).collect();
        if by_id.len() != strata.len() {
            return Err(Error::Parse("duplicate stratum id".into()));
        }
        for s in &strata {
            if s.rec.dimension >= self.dimension {
                return Err(Error::Parse(format!(
                    "stratum {} is not of lower dimension",
                    s.rec.id
                )));
            }
        }
        for inc in &self.incidences {
            let (Some(a), Some(b)) = (
                by_id.get(inc.stratum.as_str()),
                by_id.get(inc.boundary.as_str()),
            ) else {
                return Err(Error::Parse(format!(
                    "incidence {} / {} names an unknown stratum",
                    inc.stratum, inc.boundary
                )));
            };
            if a.rec.count != 1 || b.rec.count != 1 {
                return Err(Error::Parse("incident strata must have count 1".into()));
            }
            if b.rec.dimension >= a.rec.dimension {
                return Err(Error::Parse(format!(
                    "{} cannot bound {}",
                    inc.boundary, inc.stratum
                )));
            }
            if inc.inclusion.len() != a.group.orders.len()
                || inc
                    .inclusion
                    .iter()
                    .any(|v| v.len() != b.group.orders.len())
            {
                return Err(Error::Parse(format!(
                    "inclusion {} → {} has the wrong shape",
                    inc.stratum, inc.boundary
                )));
            }
        }
        Ok(())
    }

    /// Twisted Γ-sectors: connected components of the graph on (stratum
    /// copy, nontrivial homomorphism) with edges `(e, φ) ~ (v, ι∘φ)`.
    pub fn twisted_sectors(&self, gamma: &GroupPresentation) -> Result<Vec<FixtureSector>> {
        let strata = self.strata_parsed()?;
        let pos: HashMap<&str, usize> = strata
            .iter()
            .enumerate()
            .map(|(i, s)| (s.rec.id.as_str(), i))
            .collect();
        let mut nodes: Vec<(usize, usize, Vec<Vec<u64>>)> = Vec::new();
        let mut node_index: HashMap<(usize, usize, Vec<Vec<u64>>), usize> = HashMap::new();
        for (si, s) in strata.iter().enumerate() {
            let homs: Vec<_> = s
                .group
                .homs(gamma)
                .into_iter()
                .filter(|h| h.iter().any(|x| x.iter().any(|&c| c != 0)))
                .collect();
            for copy in 0..s.rec.count {
                for h in &homs {
                    node_index.insert((si, copy, h.clone()), nodes.len());
                    nodes.push((si, copy, h.clone()));
                }
            }
        }
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        for inc in &self.incidences {
            let (a, b) = (pos[inc.stratum.as_str()], pos[inc.boundary.as_str()]);
            let gb = &strata[b].group;
            for h in strata[a].group.homs(gamma) {
                if h.iter().all(|x| x.iter().all(|&c| c == 0)) {
                    continue;
                }
                // ι ∘ φ on each generator of Γ
                let pushed: Vec<Vec<u64>> = h
                    .iter()
                    .map(|x| {
                        let mut acc = vec![0; gb.orders.len()];
                        for (k, &c) in x.iter().enumerate() {
                            gb.add_scaled(&mut acc, &inc.inclusion[k], c as i64);
                        }
                        acc
                    })
                    .collect();
                let u = node_index[&(a, 0, h.clone())];
                let v = *node_index.get(&(b, 0, pushed.clone())).ok_or_else(|| {
                    Error::InternalConsistency(format!(
                        "inclusion {} → {} is not injective",
                        inc.stratum, inc.boundary
                    ))
                })?;
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..nodes.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out = Vec::new();
        for members in groups.into_values() {
            let dimension = members
                .iter()
                .map(|&i| strata[nodes[i].0].rec.dimension)
                .max()
                .unwrap_or(0);
            let top: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&i| strata[nodes[i].0].rec.dimension == dimension)
                .collect();
            let volume = top.iter().fold(ClosedForm::zero(), |acc, &i| {
                acc.add(&strata[nodes[i].0].length)
            });
            let shape = if top.len() == 1 {
                strata[nodes[top[0]].0].rec.shape
            } else {
                StratumShape::Other
            };
            let charts = members
                .iter()
                .map(|&i| {
                    (
                        strata[nodes[i].0].rec.id.clone(),
                        nodes[i].1,
                        nodes[i].2.clone(),
                    )
                })
                .collect();
            out.push(FixtureSector {
                dimension,
                shape,
                volume,
                charts,
            });
        }
        out.sort_by(|a, b| {
            b.dimension
                .cmp(&a.dimension)
                .then_with(|| a.charts.cmp(&b.charts))
        });
        Ok(out)
    }

    /// Twisted sectors plus the nontwisted one.
    pub fn component_count(&self, gamma: &GroupPresentation) -> Result<usize> {
        Ok(self.twisted_sectors(gamma)?.len() + 1)
    }

    /// Sum of twisted-sector volumes in dimension `d`.
    pub fn twisted_volume(&self, gamma: &GroupPresentation, d: usize) -> Result<ClosedForm> {
        Ok(self
            .twisted_sectors(gamma)?
            .iter()
            .filter(|s| s.dimension == d)
            .fold(ClosedForm::zero(), |acc, s| acc.add(&s.volume)))
    }

    /// Minimum dimension over singular strata, `None` for a manifold.
    pub fn lowest_stratum_dimension(&self) -> Option<usize> {
        self.strata.iter().map(|s| s.dimension).min()
    }
}

impl FixtureSector {
    /// Spectrum for circles (trivial residual action), mirrored segments and
    /// points, up to mode `k_max`.
    pub fn spectrum(&self, k_max: u64) -> Result<SpectrumSegment> {
        match self.shape {
            StratumShape::Circle => circle_spectrum(&self.volume, CircleKind::Circle, k_max),
            StratumShape::Segment => circle_spectrum(
                &self
                    .volume
                    .scale(&num_rational::BigRational::from_integer(2.into())),
                CircleKind::Reflection,
                k_max,
            ),
            StratumShape::Point if self.dimension == 0 => Ok(SpectrumSegment::new(
                [(ClosedForm::zero(), 1)],
                ClosedForm::zero(),
            )),
            _ => Err(Error::UnsupportedSector(format!(
                "fixture sector of shape {:?}",
                self.shape
            ))),
        }
    }
}

/// Fixtures shipped with the crate, by name.
pub fn builtin_fixture(name: &str) -> Result<SingularSetFixture> {
    let text = match name {
        "three-circles-1" => include_str!("../../data/fixtures/three_circles_1.json"),
        "four-circles-2211" => include_str!("../../data/fixtures/four_circles_2211.json"),
        "three-circles-2" => include_str!("../../data/fixtures/three_circles_2.json"),
        "cube-skeleton" => include_str!("../../data/fixtures/cube_skeleton.json"),
        "two-circles-sqrt2" => include_str!("../../data/fixtures/two_circles_sqrt2.json"),
        "four-circles-inv-sqrt2" => include_str!("../../data/fixtures/four_circles_inv_sqrt2.json"),
        _ => return Err(Error::InvalidParameter(format!("unknown fixture '{name}'"))),
    };
    SingularSetFixture::from_json(text)
}

pub const BUILTIN_FIXTURES: &[&str] = &[
    "three-circles-1",
    "four-circles-2211",
    "three-circles-2",
    "cube-skeleton",
    "two-circles-sqrt2",
    "four-circles-inv-sqrt2",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_hom::parse_gamma;

    #[test]
    fn abelian_tags() {
        assert_eq!(AbelianGroup::parse("Z2xZ2").unwrap().order(), 4);
        assert_eq!(AbelianGroup::parse("1").unwrap().order(), 1);
        assert!(AbelianGroup::parse("Q8").is_err());
        let z4 = AbelianGroup::parse("Z4").unwrap();
        assert_eq!(z4.homs(&parse_gamma("Z^2").unwrap()).len(), 16);
        assert_eq!(z4.homs(&parse_gamma("Zp:2").unwrap()).len(), 2);
    }

    #[test]
    fn all_builtins_load() {
        for name in BUILTIN_FIXTURES {
            builtin_fixture(name).unwrap();
        }
    }

    #[test]
    fn seven_unit_circles() {
        let f = builtin_fixture("three-circles-1").unwrap();
        let s = f.twisted_sectors(&parse_gamma("Z").unwrap()).unwrap();
        assert_eq!(s.len(), 7);
        assert!(s
            .iter()
            .all(|x| x.shape == StratumShape::Circle && x.volume == ClosedForm::int(1)));
        assert_eq!(f.lowest_stratum_dimension(), Some(1));
    }

    #[test]
    fn cube_intervals() {
        let f = builtin_fixture("cube-skeleton").unwrap();
        let s = f.twisted_sectors(&parse_gamma("Z").unwrap()).unwrap();
        assert_eq!(s.len(), 12);
        assert!(s
            .iter()
            .all(|x| x.shape == StratumShape::Segment && x.charts.len() == 3));
        let spec = s[0].spectrum(2).unwrap();
        assert_eq!(spec.entries()[1], (ClosedForm::pi_power(2), 1));
    }
}
