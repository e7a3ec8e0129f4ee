//! Builtin scenarios and JSON scenario files.

use serde::Deserialize;

use gamma_sectors::finite_group::constructions::{
    block_sum, diagonal_copies, elementary_abelian_regular, heisenberg_regular, product_action,
    sign_generators,
};
use gamma_sectors::finite_group::{
    generate_group, FiniteMatrixGroup, GroupElement, GroupSpec, DEFAULT_GROUP_CAP,
};
use gamma_sectors::flat_orbifold::fixtures::{builtin_fixture, SingularSetFixture};
use gamma_sectors::flat_orbifold::{mirrored_product, FlatOrbifold, IsospectralPair};
use gamma_sectors::orthogonal_action::{SphereAction, StiefelAction};
use gamma_sectors::sphere_spectrum::lens_rotation_group;
use gamma_sectors::{Error, Result};

/// What a member orbifold is a quotient of.
pub enum Model {
    Sphere(SphereAction),
    /// Frames `V(n, k)` with the group acting on the left.
    Stiefel(StiefelAction),
    /// A finite group acting trivially on an unspecified connected manifold.
    Trivial(FiniteMatrixGroup),
    Flat(FlatOrbifold),
    Fixture(SingularSetFixture),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Sphere(_) => "sphere",
            Model::Stiefel(_) => "stiefel",
            Model::Trivial(_) => "trivial",
            Model::Flat(_) => "flat",
            Model::Fixture(_) => "fixture",
        }
    }

    /// The acting finite matrix group, for linear models.
    pub fn group(&self) -> Option<&FiniteMatrixGroup> {
        use gamma_sectors::orthogonal_action::LinearAction;
        match self {
            Model::Sphere(a) => Some(a.group()),
            Model::Stiefel(a) => Some(a.group()),
            Model::Trivial(g) => Some(g),
            _ => None,
        }
    }
}

pub struct Member {
    pub name: String,
    pub model: Model,
}

/// A biquotient `L \ SO(N) / R` whose singular strata are compared.
pub struct Biquotient {
    pub name: String,
    pub left: FiniteMatrixGroup,
    pub right: FiniteMatrixGroup,
}

/// A value the scenario is known to produce.
#[derive(Clone, Debug)]
pub struct Expected {
    pub command: &'static str,
    pub gamma: String,
    pub quantity: String,
    pub values: Vec<String>,
}

pub struct Scenario {
    pub name: String,
    pub members: Vec<Member>,
    pub biquotients: Vec<Biquotient>,
    pub expected: Vec<Expected>,
    pub default_gamma: String,
}

fn expected(command: &'static str, gamma: &str, quantity: &str, values: &[&str]) -> Expected {
    Expected {
        command,
        gamma: gamma.into(),
        quantity: quantity.into(),
        values: values.iter().map(|s| s.to_string()).collect(),
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(format!("bad {what} {s:?}")))
}

pub fn k_group(which: u8) -> FiniteMatrixGroup {
    let gens: &[&[usize]] = if which == 1 {
        &[&[1, 2], &[1, 3], &[1, 4, 5, 6]]
    } else {
        &[&[1, 2], &[3, 4], &[5, 6]]
    };
    generate_group(6, sign_generators(6, gens), 64).expect("eight sign matrices")
}

/// `K` acting diagonally on `R^6 ⊕ R^6`.
pub fn doubled_k_group(which: u8) -> FiniteMatrixGroup {
    let k = k_group(which);
    generate_group(12, diagonal_copies(k.generators(), 2), 64).expect("eight sign matrices")
}

/// `⟨a12, a23⟩ × K^{Δ2}` on `R^3 ⊕ R^12`.
pub fn frame_group(which: u8) -> FiniteMatrixGroup {
    let id3 = GroupElement::sign_diagonal(3, &[]);
    let mut gens = sign_generators(15, &[&[1, 2], &[2, 3]]);
    gens.extend(
        doubled_k_group(which)
            .generators()
            .iter()
            .map(|g| block_sum(&id3, g)),
    );
    generate_group(15, gens, 64).expect("thirty-two sign matrices")
}

fn rsw27() -> Result<Scenario> {
    let members = [1u8, 2]
        .iter()
        .map(|&i| {
            Ok(Member {
                name: format!("K{i}"),
                model: Model::Stiefel(StiefelAction::new(k_group(i), 3)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Scenario {
        name: "rsw27".into(),
        members,
        biquotients: vec![],
        expected: vec![
            expected("sectors", "Z", "components", &["4", "4"]),
            expected("sectors", "Z^2", "components", &["16", "10"]),
            expected("sectors", "Z^3", "components", &["64", "22"]),
            expected("sectors", "Z^4", "components", &["256", "46"]),
        ],
        default_gamma: "Z".into(),
    })
}

fn rsw29() -> Result<Scenario> {
    let members = [1u8, 2]
        .iter()
        .map(|&i| {
            Ok(Member {
                name: format!("K{i}"),
                model: Model::Sphere(SphereAction::new(k_group(i))?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Scenario {
        name: "rsw29".into(),
        members,
        biquotients: vec![],
        expected: vec![expected("compare", "Z", "first disagreement", &["4"])],
        default_gamma: "Z".into(),
    })
}

fn ssw(args: &[&str]) -> Result<Scenario> {
    let (p, m): (u32, usize) = match args {
        [] => (3, 1),
        [p] => (num(p, "prime")?, 1),
        [p, m] => (num(p, "prime")?, num(m, "family size")?),
        _ => return Err(parse_err("ssw takes ssw:<p>:<m>")),
    };
    if m == 0 || p % 2 == 0 || (p as u64).pow(3 * m as u32) > 1 << 12 {
        return Err(Error::InvalidParameter(
            "ssw needs an odd prime p, m ≥ 1 and p^(3m) ≤ 4096".into(),
        ));
    }
    let (h, e) = (heisenberg_regular(p)?, elementary_abelian_regular(p)?);
    let n = (p as usize).pow(3 * m as u32);
    let mut members = Vec::new();
    for i in 0..=m {
        let factors: Vec<Vec<GroupElement>> = (0..m)
            .map(|j| if j < i { h.clone() } else { e.clone() })
            .collect();
        let gens = if m == 1 {
            factors[0].clone()
        } else {
            product_action(&factors)?
        };
        let g = generate_group(n, gens, DEFAULT_GROUP_CAP)?;
        members.push(Member {
            name: format!("O{i}"),
            model: Model::Sphere(SphereAction::new(g)?),
        });
    }
    let mut exp = vec![];
    if (p, m) == (3, 1) {
        exp.push(expected("sectors", "Z", "components", &["27", "11"]));
    }
    Ok(Scenario {
        name: format!("ssw:{p}:{m}"),
        members,
        biquotients: vec![],
        expected: exp,
        default_gamma: "Z".into(),
    })
}

/// Faithful permutation representation of a small named group.
pub fn named_group(tag: &str) -> Result<FiniteMatrixGroup> {
    let cyc =
        |n: usize| GroupElement::permutation((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    let (n, gens) = if tag == "1" {
        (1, vec![])
    } else if let Some(k) = tag.strip_prefix('Z') {
        let n: usize = num(k, "cyclic order")?;
        (n, vec![cyc(n)?])
    } else if let Some(k) = tag.strip_prefix('D') {
        let order: usize = num(k, "dihedral order")?;
        if order < 6 || order % 2 == 1 {
            return Err(Error::InvalidParameter(
                "dihedral groups are written D<2k> with k ≥ 3".into(),
            ));
        }
        let n = order / 2;
        let flip =
            GroupElement::permutation((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
        (n, vec![cyc(n)?, flip])
    } else if let Some(k) = tag.strip_prefix('S') {
        let n: usize = num(k, "symmetric degree")?;
        let mut swap: Vec<u32> = (0..n as u32).collect();
        if n > 1 {
            swap.swap(0, 1);
        }
        (n, vec![cyc(n)?, GroupElement::permutation(swap)?])
    } else {
        return Err(parse_err(format!(
            "unknown group {tag:?}; use 1, Z<n>, D<2k> or S<n>"
        )));
    };
    generate_group(n, gens, DEFAULT_GROUP_CAP)
}

fn mtriv(args: &[&str]) -> Result<Scenario> {
    if args.is_empty() {
        return Err(parse_err(
            "mtriv needs at least one group, e.g. mtriv:Z3:D6",
        ));
    }
    let members = args
        .iter()
        .map(|t| {
            Ok(Member {
                name: t.to_string(),
                model: Model::Trivial(named_group(t)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut exp = vec![];
    if args == ["Z3", "D6"] {
        exp.push(expected("sectors", "Z^2", "components", &["9", "8"]));
        exp.push(expected("sectors", "F2", "components", &["9", "12"]));
    }
    Ok(Scenario {
        name: format!("mtriv:{}", args.join(":")),
        members,
        biquotients: vec![],
        expected: exp,
        default_gamma: "Z^2".into(),
    })
}

fn weights(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|w| num(w, "weight")).collect()
}

fn lens(args: &[&str]) -> Result<Scenario> {
    let [q, ws @ ..] = args else {
        return Err(parse_err("lens takes lens:<q>:<w,w,..>[:<w,w,..>]"));
    };
    let q: i64 = num(q, "order")?;
    if ws.is_empty() {
        return Err(parse_err("lens needs a weight list"));
    }
    let members = ws
        .iter()
        .map(|w| {
            let g = lens_rotation_group(q, &weights(w)?)?;
            Ok(Member {
                name: format!("L({q};{w})"),
                model: Model::Sphere(SphereAction::new(g)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Scenario {
        name: format!("lens:{}", args.join(":")),
        members,
        biquotients: vec![],
        expected: vec![],
        default_gamma: "Z".into(),
    })
}

fn fixture(spec: &str) -> Result<SingularSetFixture> {
    if spec.ends_with(".json") || spec.contains('/') {
        let text = std::fs::read_to_string(spec).map_err(|e| parse_err(format!("{spec}: {e}")))?;
        SingularSetFixture::from_json(&text)
    } else {
        builtin_fixture(spec)
    }
}

fn flat_fixture(args: &[&str]) -> Result<Scenario> {
    let names: Vec<String> = match args {
        ["circles"] => vec!["three-circles-1".into(), "four-circles-2211".into()],
        ["cube"] => vec!["three-circles-2".into(), "cube-skeleton".into()],
        ["lengths"] => vec!["two-circles-sqrt2".into(), "four-circles-inv-sqrt2".into()],
        [list] => list.split(',').map(str::to_string).collect(),
        _ => return Err(parse_err("flat-fixture takes a pair name (circles, cube, lengths) or fixtures separated by commas")),
    };
    let members = names
        .iter()
        .map(|n| {
            Ok(Member {
                name: n.clone(),
                model: Model::Fixture(fixture(n)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let exp = match args {
        ["circles"] => vec![
            expected("sectors", "Z", "components", &["8", "5"]),
            expected("sectors", "Z^2", "components", &["34", "13"]),
        ],
        ["cube"] => vec![expected("sectors", "Z", "components", &["8", "13"])],
        ["lengths"] => vec![
            expected("sectors", "Z", "components", &["3", "5"]),
            expected("compare", "Z", "first disagreement", &["0"]),
            expected("heat", "Z", "coefficient d=1", &["2*sqrt(2)", "2*sqrt(2)"]),
        ],
        _ => vec![],
    };
    Ok(Scenario {
        name: format!("flat-fixture:{}", args.join(":")),
        members,
        biquotients: vec![],
        expected: exp,
        default_gamma: "Z".into(),
    })
}

fn torus5(args: &[&str]) -> Result<Scenario> {
    let pair = match args {
        [] => IsospectralPair::builtin()?,
        [path] => IsospectralPair::from_json(
            &std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))?,
        )?,
        _ => return Err(parse_err("torus5 takes an optional lattice-pair file")),
    };
    let members = vec![
        Member {
            name: "first".into(),
            model: Model::Flat(mirrored_product(&pair.first)?),
        },
        Member {
            name: "second".into(),
            model: Model::Flat(mirrored_product(&pair.second)?),
        },
    ];
    Ok(Scenario {
        name: "torus5".into(),
        members,
        biquotients: vec![],
        expected: vec![expected("sectors", "Z", "components", &["3", "3"])],
        default_gamma: "Z".into(),
    })
}

fn sunada15() -> Result<Scenario> {
    let members = [1u8, 2]
        .iter()
        .map(|&i| {
            Ok(Member {
                name: format!("G{i}"),
                model: Model::Stiefel(StiefelAction::new(frame_group(i), 12)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let biquotients = vec![
        Biquotient {
            name: "K1\\SO(12)/K1".into(),
            left: doubled_k_group(1),
            right: doubled_k_group(1),
        },
        Biquotient {
            name: "K2\\SO(12)/K1".into(),
            left: doubled_k_group(2),
            right: doubled_k_group(1),
        },
    ];
    Ok(Scenario {
        name: "sunada15".into(),
        members,
        biquotients,
        expected: vec![expected("sunada", "Z", "lowest stratum", &["18", "34"])],
        default_gamma: "Z".into(),
    })
}

/// Scenario file, JSON:
///
/// ```json
/// { "name": "pair", "model": "sphere", "gamma": "Z",
///   "members": [ { "name": "A", "group": { "dimension": 3, "generators": [ { "negate": [3] } ] } },
///                { "name": "B", "group": { "dimension": 3, "generators": [ { "negate": [1, 2, 3] } ] } } ] }
/// ```
///
/// `model` is `sphere`, `stiefel` (with `"frames": k`) or `trivial`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    model: String,
    #[serde(default)]
    frames: Option<usize>,
    #[serde(default)]
    gamma: Option<String>,
    members: Vec<MemberFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberFile {
    name: String,
    group: GroupSpec,
}

pub fn from_file_text(text: &str) -> Result<Scenario> {
    let f: ScenarioFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let members =
        f.members
            .into_iter()
            .map(|m| {
                let g = m.group.build(DEFAULT_GROUP_CAP)?;
                let model =
                    match (f.model.as_str(), f.frames) {
                        ("sphere", None) => Model::Sphere(SphereAction::new(g)?),
                        ("stiefel", Some(k)) => Model::Stiefel(StiefelAction::new(g, k)?),
                        ("trivial", None) => Model::Trivial(g),
                        (other, _) => return Err(parse_err(format!(
                            "bad model {other:?} (stiefel needs frames, others must not set it)"
                        ))),
                    };
                Ok(Member {
                    name: m.name,
                    model,
                })
            })
            .collect::<Result<Vec<_>>>()?;
    Ok(Scenario {
        name: f.name,
        members,
        biquotients: vec![],
        expected: vec![],
        default_gamma: f.gamma.unwrap_or_else(|| "Z".into()),
    })
}

/// Resolves `rsw27`, `ssw:3:1`, `ssw(3,1)`, `mtriv:D6`, `lens:5:1,2:1,3`,
/// `flat-fixture:cube`, `torus5`, `sunada15` or `file:<path>`.
pub fn resolve(spec: &str) -> Result<Scenario> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))?;
        return from_file_text(&text);
    }
    // `name(a, b)` is accepted for `name:a:b`
    let normalized = match spec.split_once('(') {
        Some((head, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| parse_err(format!("unbalanced parentheses in {spec:?}")))?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            format!("{head}:{}", parts.join(":"))
        }
        None => spec.to_string(),
    };
    let mut parts = normalized.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.filter(|s| !s.is_empty()).collect();
    match (head, args.as_slice()) {
        ("rsw27", []) => rsw27(),
        ("rsw29", []) => rsw29(),
        ("sunada15", []) => sunada15(),
        ("ssw", a) => ssw(a),
        ("mtriv", a) => mtriv(a),
        ("lens", a) => lens(a),
        ("flat-fixture", a) => flat_fixture(a),
        ("torus5", a) => torus5(a),
        _ => Err(parse_err(format!("unknown scenario {spec:?}"))),
    }
}

pub const BUILTIN_SCENARIOS: &[&str] = &[
    "rsw27",
    "rsw29",
    "ssw:3:1",
    "mtriv:Z3:D6",
    "lens:5:1,2:1,3",
    "flat-fixture:circles",
    "flat-fixture:cube",
    "flat-fixture:lengths",
    "torus5",
    "sunada15",
];
