use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "parameter", rename_all = "snake_case")]
pub enum GammaKind {
    Trivial,
    /// `Z^ℓ`; `Z` itself is `FreeAbelian(1)`.
    FreeAbelian(usize),
    Free(usize),
    Cyclic(u64),
    /// Dihedral group of order `2k`.
    Dihedral(u64),
    Custom,
}

/// A finitely presented group. Words are lists of signed 1-based generator
/// indices: `-2` is the inverse of the second generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generator_count: usize,
    pub relators: Vec<Vec<i32>>,
    pub kind: GammaKind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: usize,
    #[serde(default)]
    relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn custom(generator_count: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        for w in &relators {
            for &x in w {
                if x == 0 || x.unsigned_abs() as usize > generator_count {
                    return Err(Error::InvalidParameter(format!(
                        "relator letter {x} outside generators 1..={generator_count}"
                    )));
                }
            }
        }
        Ok(GroupPresentation {
            generator_count,
            relators,
            kind: GammaKind::Custom,
        })
    }

    /// `{"generators": 2, "relators": [[1, 2, -1, -2]]}`
    pub fn from_json(text: &str) -> Result<Self> {
        let f: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::custom(f.generators, f.relators)
    }

    pub fn is_free_abelian(&self) -> bool {
        matches!(self.kind, GammaKind::FreeAbelian(_))
    }
}

pub fn builtin_gamma(kind: GammaKind) -> Result<GroupPresentation> {
    let (r, relators) = match kind {
        GammaKind::Trivial => (0, vec![]),
        GammaKind::FreeAbelian(l) | GammaKind::Free(l) if l == 0 => {
            return Err(Error::InvalidParameter("rank must be at least 1".into()))
        }
        GammaKind::FreeAbelian(l) => {
            let mut rel = Vec::new();
            for i in 1..=l as i32 {
                for j in i + 1..=l as i32 {
                    rel.push(vec![i, j, -i, -j]);
                }
            }
            (l, rel)
        }
        GammaKind::Free(l) => (l, vec![]),
        GammaKind::Cyclic(p) if p < 2 => {
            return Err(Error::InvalidParameter("Z_p needs p ≥ 2".into()))
        }
        GammaKind::Cyclic(p) => (1, vec![vec![1; p as usize]]),
        GammaKind::Dihedral(k) if k < 1 => {
            return Err(Error::InvalidParameter("dihedral needs k ≥ 1".into()))
        }
        GammaKind::Dihedral(k) => (2, vec![vec![1; k as usize], vec![2, 2], vec![1, 2, 1, 2]]),
        GammaKind::Custom => {
            return Err(Error::InvalidParameter(
                "custom presentations need relators".into(),
            ))
        }
    };
    Ok(GroupPresentation {
        generator_count: r,
        relators,
        kind,
    })
}

/// Parses `Z`, `Z^3`, `F2`, `Zp:5`, `D:4` (dihedral of order 8) or `trivial`.
pub fn parse_gamma(s: &str) -> Result<GroupPresentation> {
    let s = s.trim();
    let num = |t: &str| -> Result<u64> {
        t.parse()
            .map_err(|_| Error::Parse(format!("bad Γ specification {s:?}")))
    };
    let kind = if s == "Z" {
        GammaKind::FreeAbelian(1)
    } else if s == "trivial" || s == "1" {
        GammaKind::Trivial
    } else if let Some(l) = s.strip_prefix("Z^") {
        GammaKind::FreeAbelian(num(l)? as usize)
    } else if let Some(p) = s.strip_prefix("Zp:") {
        GammaKind::Cyclic(num(p)?)
    } else if let Some(k) = s.strip_prefix("D:") {
        GammaKind::Dihedral(num(k)?)
    } else if let Some(l) = s.strip_prefix('F') {
        GammaKind::Free(num(l)? as usize)
    } else {
        return Err(Error::Parse(format!("unknown Γ {s:?}")));
    };
    builtin_gamma(kind)
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GammaKind::Trivial => write!(f, "1"),
            GammaKind::FreeAbelian(1) => write!(f, "Z"),
            GammaKind::FreeAbelian(l) => write!(f, "Z^{l}"),
            GammaKind::Free(l) => write!(f, "F{l}"),
            GammaKind::Cyclic(p) => write!(f, "Z_{p}"),
            GammaKind::Dihedral(k) => write!(f, "D_{}", 2 * k),
            GammaKind::Custom => write!(
                f,
                "<{} generators | {} relators>",
                self.generator_count,
                self.relators.len()
            ),
        }
    }
}
