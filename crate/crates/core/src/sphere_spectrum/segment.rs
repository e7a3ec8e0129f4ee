use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactnum::ClosedForm;

/// An initial piece of a Laplace spectrum: every eigenvalue `≤ cutoff` with
/// its exact multiplicity, nothing above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSegment {
    entries: Vec<(ClosedForm, u64)>,
    cutoff: ClosedForm,
}

impl SpectrumSegment {
    /// Merges repeated eigenvalues, drops zero multiplicities and anything past
    /// `cutoff`, and sorts.
    pub fn new(entries: impl IntoIterator<Item = (ClosedForm, u64)>, cutoff: ClosedForm) -> Self {
        let mut m: BTreeMap<ClosedForm, u64> = BTreeMap::new();
        for (lambda, mult) in entries {
            if mult > 0 && lambda <= cutoff {
                *m.entry(lambda).or_insert(0) += mult;
            }
        }
        SpectrumSegment {
            entries: m.into_iter().collect(),
            cutoff,
        }
    }

    pub fn empty(cutoff: ClosedForm) -> Self {
        SpectrumSegment {
            entries: vec![],
            cutoff,
        }
    }

    pub fn entries(&self) -> &[(ClosedForm, u64)] {
        &self.entries
    }

    pub fn cutoff(&self) -> &ClosedForm {
        &self.cutoff
    }

    pub fn multiplicity(&self, lambda: &ClosedForm) -> u64 {
        self.entries
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or(0, |(_, m)| *m)
    }

    pub fn multiplicity_of_rational(&self, q: i64) -> u64 {
        self.multiplicity(&ClosedForm::int(q))
    }

    /// Eigenvalues strictly between `lo` and `hi`.
    pub fn entries_between(&self, lo: &ClosedForm, hi: &ClosedForm) -> Vec<(ClosedForm, u64)> {
        self.entries
            .iter()
            .filter(|(l, _)| l > lo && l < hi)
            .cloned()
            .collect()
    }

    /// Restriction to eigenvalues `≤ cutoff` (which must not exceed the current cutoff).
    pub fn truncate(&self, cutoff: &ClosedForm) -> Self {
        let c = if cutoff < &self.cutoff {
            cutoff.clone()
        } else {
            self.cutoff.clone()
        };
        Self::new(self.entries.iter().cloned(), c)
    }

    /// Multiset union, valid up to the smaller cutoff.
    pub fn union(&self, other: &Self) -> Self {
        let c = if self.cutoff < other.cutoff {
            self.cutoff.clone()
        } else {
            other.cutoff.clone()
        };
        Self::new(self.entries.iter().chain(other.entries.iter()).cloned(), c)
    }

    /// Every multiplicity multiplied by `k`, e.g. for `k` isometric components.
    pub fn scaled(&self, k: u64) -> Self {
        Self::new(
            self.entries.iter().map(|(l, m)| (l.clone(), m * k)),
            self.cutoff.clone(),
        )
    }

    /// Eigenvalues multiplied by a positive rational.
    pub fn rescaled(&self, factor: &BigRational) -> Self {
        let f = ClosedForm::rational(factor.clone());
        Self::new(
            self.entries.iter().map(|(l, m)| (l.mul(&f), *m)),
            self.cutoff.mul(&f),
        )
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

impl fmt::Display for SpectrumSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(l, m)| format!("{l}×{m}"))
            .collect();
        write!(
            f,
            "{{{}}} (complete up to {})",
            parts.join(", "),
            self.cutoff
        )
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    eigenvalue: &'a ClosedForm,
    approx: f64,
    multiplicity: u64,
}

impl Serialize for SpectrumSegment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(l, m)| Entry {
                eigenvalue: l,
                approx: l.to_f64(),
                multiplicity: *m,
            })
            .collect();
        let mut st = s.serialize_struct("SpectrumSegment", 2)?;
        st.serialize_field("cutoff", &self.cutoff)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}
