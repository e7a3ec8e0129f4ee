//! The six subcommands, each turning a scenario into a [`Report`].

use std::time::Instant;

use num_rational::BigRational;

use gamma_sectors::exactnum::{parse_rational, ClosedForm};
use gamma_sectors::finite_group::{AmbientClassInvariant, FiniteMatrixGroup};
use gamma_sectors::gamma_hom::{hom_classes, parse_gamma, GroupPresentation, DEFAULT_HOM_BUDGET};
use gamma_sectors::orthogonal_action::{sector_list, FixedSetKind, LinearAction, SectorDescriptor};
use gamma_sectors::sectors::{
    compare_gamma_spectra, compare_segments, distinguish_by_lowest_stratum, GammaSpectrum,
    LowestStratum, SpectrumVerdict,
};
use gamma_sectors::sphere_spectrum::sphere_eigenvalue;
use gamma_sectors::sunada::{
    biquotient_lowest_stratum, certify_gamma_isospectral, check_sunada, SunadaTriple,
};
use gamma_sectors::{Error, Result};

use crate::report::{ExpectedCheck, Report, Table};
use crate::scenario::{resolve, Member, Model, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Sectors,
    Spectrum,
    Compare,
    Heat,
    Sunada,
    Certify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sectors => "sectors",
            Command::Spectrum => "spectrum",
            Command::Compare => "compare",
            Command::Heat => "heat",
            Command::Sunada => "sunada",
            Command::Certify => "certify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub gamma: Option<String>,
    pub cutoff_degree: usize,
    pub cutoff_mu: String,
    pub budget: u64,
    pub seed_check: bool,
    /// Times at which `heat` evaluates the trace.
    pub times: Vec<f64>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            gamma: None,
            cutoff_degree: 6,
            cutoff_mu: "4".into(),
            budget: DEFAULT_HOM_BUDGET,
            seed_check: false,
            times: vec![0.1, 1.0],
            timing: false,
        }
    }
}

/// Exit status for an error: 2 parse, 3 budget, 4 internal consistency,
/// 5 unsupported sector.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::GroupTooLarge { .. } => 3,
        Error::InternalConsistency(_) => 4,
        Error::UnsupportedSector(_) => 5,
        _ => 2,
    }
}

pub fn parse_gamma_arg(s: &str) -> Result<GroupPresentation> {
    match s.strip_prefix("file:") {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            GroupPresentation::from_json(&text)
        }
        None => parse_gamma(s),
    }
}

struct Ctx<'a> {
    opts: &'a Options,
    gamma: GroupPresentation,
    mu: BigRational,
}

impl Ctx<'_> {
    /// Sphere cutoff: the eigenvalue of harmonic degree `cutoff_degree`.
    fn sphere_cutoff(&self, g: &FiniteMatrixGroup) -> i64 {
        sphere_eigenvalue(self.opts.cutoff_degree, g.dim())
    }

    fn fixture_cutoff(&self) -> ClosedForm {
        ClosedForm::monomial(BigRational::from_integer(4.into()), 1, 2).scale(&self.mu)
    }
}

fn kind_name(k: &FixedSetKind) -> String {
    match k {
        FixedSetKind::Empty => "empty".into(),
        FixedSetKind::Sphere { dim } => format!("S^{dim}"),
        FixedSetKind::Stiefel { n, k } => format!("V({n},{k})"),
        FixedSetKind::Flat { dim } => format!("T^{dim}"),
    }
}

fn linear_sectors(m: &Member, ctx: &Ctx) -> Result<Option<(Vec<SectorDescriptor>, Vec<String>)>> {
    let (s, g) = match &m.model {
        Model::Sphere(a) => (sector_list(a, &ctx.gamma, ctx.opts.budget)?, a.group()),
        Model::Stiefel(a) => (sector_list(a, &ctx.gamma, ctx.opts.budget)?, a.group()),
        _ => return Ok(None),
    };
    let labels = s.iter().map(|x| x.label(g)).collect();
    Ok(Some((s, labels)))
}

/// One row per sector: class, fixed set, dimension, components, kernel order.
fn sector_rows(m: &Member, ctx: &Ctx) -> Result<Vec<[String; 5]>> {
    if let Some((s, labels)) = linear_sectors(m, ctx)? {
        return Ok(s
            .iter()
            .zip(labels)
            .map(|(x, l)| {
                [
                    l,
                    kind_name(&x.fixed_set.kind),
                    x.fixed_set
                        .manifold_dimension
                        .map_or("-".into(), |d| d.to_string()),
                    x.components().to_string(),
                    x.effective_kernel.order().to_string(),
                ]
            })
            .collect());
    }
    Ok(match &m.model {
        Model::Trivial(g) => hom_classes(&ctx.gamma, g, ctx.opts.budget)?
            .iter()
            .map(|c| {
                let parts: Vec<String> = c
                    .representative
                    .images
                    .iter()
                    .map(|&i| g.element(i).to_string())
                    .collect();
                [
                    format!("({})", parts.join(", ")),
                    "M".into(),
                    "dim M".into(),
                    "1".into(),
                    c.stabilizer_order.to_string(),
                ]
            })
            .collect(),
        Model::Flat(o) => o
            .sectors(&ctx.gamma, ctx.opts.budget)?
            .iter()
            .map(|s| {
                let d = s.dimension();
                let kind = if d == 0 {
                    "points".to_string()
                } else {
                    format!("T^{d}")
                };
                [
                    s.label(),
                    kind,
                    d.to_string(),
                    s.component_count().to_string(),
                    "-".into(),
                ]
            })
            .collect(),
        Model::Fixture(f) => {
            let mut rows = vec![[
                "nontwisted".to_string(),
                "orbifold".into(),
                f.dimension.to_string(),
                "1".into(),
                "-".into(),
            ]];
            for s in f.twisted_sectors(&ctx.gamma)? {
                let label = s
                    .charts
                    .iter()
                    .map(|(id, copy, _)| format!("{id}#{copy}"))
                    .collect::<Vec<_>>()
                    .join("+");
                rows.push([
                    label,
                    format!("{:?}", s.shape).to_lowercase(),
                    s.dimension.to_string(),
                    "1".into(),
                    "-".into(),
                ]);
            }
            rows
        }
        Model::Sphere(_) | Model::Stiefel(_) => unreachable!(),
    })
}

fn gamma_spectrum(m: &Member, ctx: &Ctx) -> Result<GammaSpectrum> {
    if let Some((s, labels)) = linear_sectors(m, ctx)? {
        let g = m.model.group().expect("linear");
        return GammaSpectrum::from_linear_sectors(&s, &labels, ctx.sphere_cutoff(g));
    }
    match &m.model {
        Model::Trivial(g) => {
            let rows = hom_classes(&ctx.gamma, g, ctx.opts.budget)?;
            let contributions = rows
                .iter()
                .map(|c| {
                    let parts: Vec<String> = c
                        .representative
                        .images
                        .iter()
                        .map(|&i| g.element(i).to_string())
                        .collect();
                    gamma_sectors::sectors::SectorContribution {
                        label: format!("({})", parts.join(", ")),
                        twisted: !c.representative.is_trivial(),
                        dimension: 0,
                        components: 1,
                        volume: None,
                        spectrum: None,
                        unsupported: Some("a copy of the unspecified manifold M".into()),
                    }
                })
                .collect();
            Ok(GammaSpectrum::new(
                contributions,
                ClosedForm::zero(),
                ClosedForm::int(1),
            ))
        }
        Model::Flat(o) => {
            GammaSpectrum::from_flat_sectors(&o.sectors(&ctx.gamma, ctx.opts.budget)?, &ctx.mu)
        }
        Model::Fixture(f) => GammaSpectrum::from_fixture(f, &ctx.gamma, &ctx.fixture_cutoff()),
        Model::Sphere(_) | Model::Stiefel(_) => unreachable!(),
    }
}

fn laplace(s: &GammaSpectrum, label: &ClosedForm) -> ClosedForm {
    s.eigenvalue_scale.mul(label)
}

fn cutoff_text(s: &Scenario, ctx: &Ctx) -> String {
    match s.members.first().map(|m| &m.model) {
        Some(Model::Sphere(a)) => format!(
            "harmonic degree {} (eigenvalue {})",
            ctx.opts.cutoff_degree,
            ctx.sphere_cutoff(a.group())
        ),
        Some(Model::Flat(_)) => format!("μ ≤ {} (eigenvalue 4π²μ)", ctx.opts.cutoff_mu),
        Some(Model::Fixture(_)) => format!("eigenvalue ≤ 4π²·{}", ctx.opts.cutoff_mu),
        _ => "none".into(),
    }
}

fn check_expected(
    report: &mut Report,
    s: &Scenario,
    command: Command,
    gamma: &str,
    computed: &[(&str, Vec<String>)],
) {
    for e in s
        .expected
        .iter()
        .filter(|e| e.command == command.name() && e.gamma == gamma)
    {
        if let Some((_, vals)) = computed.iter().find(|(q, _)| *q == e.quantity) {
            report.expected.push(ExpectedCheck {
                quantity: e.quantity.clone(),
                expected: e.values.clone(),
                computed: vals.clone(),
                matches: &e.values == vals,
            });
        }
    }
}

fn sectors(s: &Scenario, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let mut t = Table::new(
        "sectors",
        &[
            "member",
            "class",
            "fixed set",
            "dim",
            "components",
            "kernel",
        ],
    );
    let mut totals = Vec::new();
    for m in &s.members {
        let rows = sector_rows(m, ctx)?;
        let total: usize = rows
            .iter()
            .map(|r| r[3].parse::<usize>().unwrap_or(0))
            .sum();
        if ctx.opts.seed_check {
            let z = gamma_spectrum(m, ctx)?.zero_multiplicity();
            if z != total {
                return Err(Error::InternalConsistency(format!(
                    "{}: {total} components but multiplicity of 0 is {z}",
                    m.name
                )));
            }
        }
        for row in rows {
            let mut v = vec![m.name.clone()];
            v.extend(row);
            t.push(v);
        }
        totals.push(total);
    }
    r.tables.push(t);
    let mut tt = Table::new("totals", &["member", "components"]);
    for (m, n) in s.members.iter().zip(&totals) {
        tt.push(vec![m.name.clone(), n.to_string()]);
    }
    r.tables.push(tt);
    for i in 0..totals.len() {
        for j in i + 1..totals.len() {
            if totals[i] != totals[j] {
                r.verdicts.push(format!(
                    "{} and {} are NOT Γ-isospectral: multiplicity of 0 differs ({} vs {})",
                    s.members[i].name, s.members[j].name, totals[i], totals[j]
                ));
            }
        }
    }
    check_expected(
        r,
        s,
        Command::Sectors,
        &r.gamma.clone(),
        &[("components", totals.iter().map(|n| n.to_string()).collect())],
    );
    Ok(())
}

fn spectrum(s: &Scenario, ctx: &Ctx, r: &mut Report) -> Result<()> {
    for m in &s.members {
        let g = gamma_spectrum(m, ctx)?;
        if ctx.opts.seed_check {
            g.check_union()?;
        }
        r.degraded |= g.is_partial();
        let mut t = Table::new(
            format!("{}: sectors", m.name),
            &[
                "class",
                "twisted",
                "dim",
                "components",
                "volume",
                "spectrum",
            ],
        );
        for c in &g.contributions {
            let spec = match (&c.spectrum, &c.unsupported) {
                (Some(sp), _) => sp
                    .entries()
                    .iter()
                    .map(|(l, k)| format!("{}×{k}", laplace(&g, l)))
                    .collect::<Vec<_>>()
                    .join(", "),
                (None, Some(why)) => format!("unsupported: {why}"),
                (None, None) => "-".into(),
            };
            t.push(vec![
                c.label.clone(),
                c.twisted.to_string(),
                c.dimension.to_string(),
                c.components.to_string(),
                c.volume.as_ref().map_or("-".into(), |v| v.to_string()),
                spec,
            ]);
        }
        r.tables.push(t);
        let mut t = Table::new(
            format!("{}: Γ-spectrum", m.name),
            &["eigenvalue", "multiplicity", "twisted"],
        );
        let tw = g.twisted_part();
        for (l, k) in g.merged.entries() {
            t.push(vec![
                laplace(&g, l).to_string(),
                k.to_string(),
                tw.multiplicity(l).to_string(),
            ]);
        }
        r.tables.push(t);
    }
    Ok(())
}

fn compare(s: &Scenario, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let specs = s
        .members
        .iter()
        .map(|m| gamma_spectrum(m, ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut first_disagreement = vec![];
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            let (a, b) = (&specs[i], &specs[j]);
            r.degraded |= a.is_partial() || b.is_partial();
            let verdict = compare_gamma_spectra(a, b)?;
            if ctx.opts.seed_check {
                let back = compare_gamma_spectra(b, a)?;
                let mirrored = match (&verdict, &back) {
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
                    ) => e1 == e2 && l1 == r2 && r1 == l2,
                    (SpectrumVerdict::Equal { .. }, SpectrumVerdict::Equal { .. }) => true,
                    _ => false,
                };
                if !mirrored {
                    return Err(Error::InternalConsistency(
                        "comparison is not antisymmetric".into(),
                    ));
                }
            }
            let names = format!("{} vs {}", s.members[i].name, s.members[j].name);
            let (za, zb) = (a.zero_multiplicity(), b.zero_multiplicity());
            let text = match &verdict {
                SpectrumVerdict::Differ {
                    eigenvalue,
                    left,
                    right,
                } => {
                    first_disagreement.push(laplace(a, eigenvalue).to_string());
                    let (ta, tb) = (a.twisted_part(), b.twisted_part());
                    let (ma, mb) = (ta.multiplicity(eigenvalue), tb.multiplicity(eigenvalue));
                    let detail = if left - ma == right - mb && !a.is_partial() && !b.is_partial() {
                        format!("{ma} vs {mb} twisted")
                    } else {
                        format!("{left} vs {right}")
                    };
                    format!("{names}: NOT Γ-isospectral; first disagreement at eigenvalue {} ({detail})", laplace(a, eigenvalue))
                }
                SpectrumVerdict::Equal { .. } if za != zb => {
                    first_disagreement.push("0".into());
                    format!("{names}: NOT Γ-isospectral; multiplicity of 0 differs ({za} vs {zb})")
                }
                SpectrumVerdict::Equal { cutoff, partial } => {
                    let c = laplace(a, cutoff);
                    if *partial {
                        format!("{names}: no disagreement up to eigenvalue {c} among supported sectors (partial result)")
                    } else {
                        format!("{names}: Γ-spectra agree up to eigenvalue {c}")
                    }
                }
            };
            r.verdicts.push(text);
            let mut t = Table::new(
                format!("{names}: low eigenvalues"),
                &[
                    "eigenvalue",
                    "left",
                    "right",
                    "left twisted",
                    "right twisted",
                ],
            );
            let mut ls: Vec<ClosedForm> = a
                .merged
                .entries()
                .iter()
                .chain(b.merged.entries())
                .map(|(l, _)| l.clone())
                .collect();
            ls.sort();
            ls.dedup();
            let (ta, tb) = (a.twisted_part(), b.twisted_part());
            for l in ls.iter().take(12) {
                t.push(vec![
                    laplace(a, l).to_string(),
                    a.merged.multiplicity(l).to_string(),
                    b.merged.multiplicity(l).to_string(),
                    ta.multiplicity(l).to_string(),
                    tb.multiplicity(l).to_string(),
                ]);
            }
            r.tables.push(t);
            // twisted parts on their own, which is all singular-set data determines
            if a.is_partial() || b.is_partial() {
                if let SpectrumVerdict::Differ {
                    eigenvalue,
                    left,
                    right,
                } = compare_segments(&ta, &tb)
                {
                    r.notes.push(format!(
                        "{names}: twisted contributions first differ at eigenvalue {} ({left} vs {right})",
                        laplace(a, &eigenvalue)
                    ));
                }
            }
        }
    }
    check_expected(
        r,
        s,
        Command::Compare,
        &r.gamma.clone(),
        &[("first disagreement", first_disagreement)],
    );
    Ok(())
}

fn heat(s: &Scenario, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let mut one_dim = vec![];
    for m in &s.members {
        let g = gamma_spectrum(m, ctx)?;
        r.degraded |= g.is_partial();
        let lead = g.leading_asymptotics();
        one_dim.push(lead.coefficient(1).to_string());
        let mut t = Table::new(
            format!("{}: leading heat coefficients, c·(4πt)^(-d/2)", m.name),
            &["d", "c", "≈"],
        );
        for (d, c) in &lead.terms {
            t.push(vec![
                d.to_string(),
                c.to_string(),
                format!("{:.6}", c.to_f64()),
            ]);
        }
        r.tables.push(t);
        if !lead.unknown.is_empty() {
            r.notes.push(format!(
                "{}: volume unknown for {}",
                m.name,
                lead.unknown.join(", ")
            ));
        }
        if g.merged.entries().is_empty() {
            continue;
        }
        let mut t = Table::new(
            format!("{}: truncated heat trace", m.name),
            &["t", "Σ e^(-λt)", "terms", "first omitted ≤"],
        );
        for &time in &ctx.opts.times {
            let h = g.heat_trace(time)?;
            t.push(vec![
                format!("{time}"),
                format!("{:.9}", h.value),
                h.terms.to_string(),
                format!("{:.3e}", h.cutoff_weight),
            ]);
            if h.truncated {
                r.notes.push(format!(
                    "{}: at t = {time} the first omitted term may exceed 1e-12",
                    m.name
                ));
            }
        }
        r.tables.push(t);
    }
    check_expected(
        r,
        s,
        Command::Heat,
        &r.gamma.clone(),
        &[("coefficient d=1", one_dim)],
    );
    Ok(())
}

fn stratum_text(l: LowestStratum) -> String {
    match l {
        LowestStratum::Manifold => "manifold".into(),
        LowestStratum::Dimension(d) => d.to_string(),
    }
}

fn sunada(s: &Scenario, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let groups: Vec<(&str, &FiniteMatrixGroup)> = s
        .members
        .iter()
        .filter_map(|m| m.model.group().map(|g| (m.name.as_str(), g)))
        .collect();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let t = SunadaTriple {
                ambient: AmbientClassInvariant::OrthogonalAmbient,
                h1: groups[i].1.clone(),
                h2: groups[j].1.clone(),
            };
            let rep = check_sunada(&t)?;
            let names = format!("{} vs {}", groups[i].0, groups[j].0);
            let mut tab = Table::new(
                format!("{names}: elements per characteristic polynomial"),
                &["invariant", "left", "right"],
            );
            for w in &rep.almost_conjugate.witness {
                tab.push(vec![
                    w.invariant.clone(),
                    w.count_h1.to_string(),
                    w.count_h2.to_string(),
                ]);
            }
            r.tables.push(tab);
            let conj = match rep.conjugate {
                Some(true) => "conjugate",
                Some(false) => "not conjugate",
                None => "conjugacy undecided",
            };
            let almost = if rep.almost_conjugate.almost_conjugate {
                "almost conjugate"
            } else {
                "NOT almost conjugate"
            };
            r.verdicts
                .push(format!("{names}: {almost}, {conj} in O(n)"));
        }
    }
    let mut lows = Vec::new();
    if !s.biquotients.is_empty() {
        let mut tab = Table::new(
            "biquotient singular strata",
            &[
                "orbifold",
                "lowest stratum",
                "isotropy generators (right)",
                "images (left)",
            ],
        );
        for b in &s.biquotients {
            let w = biquotient_lowest_stratum(&b.left, &b.right, ctx.opts.budget)?;
            let fmt = |v: &[Vec<usize>]| {
                v.iter()
                    .map(|c| {
                        format!(
                            "a{}",
                            c.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(".")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            tab.push(vec![
                b.name.clone(),
                stratum_text(w.lowest),
                fmt(&w.right),
                fmt(&w.left),
            ]);
            lows.push((b.name.clone(), w.lowest));
        }
        r.tables.push(tab);
    }
    for m in &s.members {
        if let Model::Fixture(f) = &m.model {
            lows.push((
                m.name.clone(),
                LowestStratum::of(f.lowest_stratum_dimension()),
            ));
        }
    }
    for i in 0..lows.len() {
        for j in i + 1..lows.len() {
            if let Some((a, b)) = distinguish_by_lowest_stratum(lows[i].1, lows[j].1) {
                r.verdicts.push(format!(
                    "{} vs {}: lowest singular strata differ ({} vs {}); they cannot be isospectral with a common manifold cover",
                    lows[i].0,
                    lows[j].0,
                    stratum_text(a),
                    stratum_text(b)
                ));
            }
        }
    }
    let low_vals: Vec<String> = lows.iter().map(|(_, l)| stratum_text(*l)).collect();
    check_expected(
        r,
        s,
        Command::Sunada,
        &r.gamma.clone(),
        &[("lowest stratum", low_vals)],
    );
    if groups.len() < 2 && lows.len() < 2 {
        return Err(Error::InvalidParameter(
            "sunada needs two linear members or two stratum descriptions".into(),
        ));
    }
    Ok(())
}

fn certify(s: &Scenario, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let [a, b] = &s.members[..] else {
        return Err(Error::InvalidParameter(
            "certify needs exactly two members".into(),
        ));
    };
    let cert = match (&a.model, &b.model) {
        (Model::Sphere(x), Model::Sphere(y)) => {
            certify_gamma_isospectral(x, y, &ctx.gamma, ctx.opts.budget)?
        }
        (Model::Stiefel(x), Model::Stiefel(y)) => {
            certify_gamma_isospectral(x, y, &ctx.gamma, ctx.opts.budget)?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "certify needs two sphere or two frame-space members".into(),
            ))
        }
    };
    let mut t = Table::new(
        "pairing",
        &[
            "left class",
            "right class",
            "fixed set",
            "components",
            "centralizers",
        ],
    );
    for p in &cert.pairing {
        t.push(vec![
            p.class1.clone(),
            p.class2.clone(),
            kind_name(&p.fixed.kind),
            p.fixed.components.to_string(),
            if p.centralizers.almost_conjugate {
                "almost conjugate"
            } else {
                "differ"
            }
            .into(),
        ]);
    }
    r.tables.push(t);
    match &cert.status {
        gamma_sectors::sunada::CertificateStatus::Certified => {
            r.verdicts.push(format!(
                "certified: {} and {} are Γ-isospectral",
                a.name, b.name
            ));
            // soundness: certified pairs must not be told apart
            let (ga, gb) = (gamma_spectrum(a, ctx)?, gamma_spectrum(b, ctx)?);
            if let SpectrumVerdict::Differ { eigenvalue, .. } = compare_gamma_spectra(&ga, &gb)? {
                return Err(Error::InternalConsistency(format!(
                    "certified pair differs at eigenvalue {eigenvalue}"
                )));
            }
            if ga.zero_multiplicity() != gb.zero_multiplicity() {
                return Err(Error::InternalConsistency(
                    "certified pair has different sector counts".into(),
                ));
            }
        }
        gamma_sectors::sunada::CertificateStatus::Failed(why) => {
            r.verdicts.push(format!("not certified: {why}"))
        }
    }
    r.notes.extend(cert.notes.iter().cloned());
    for u in &cert.unmatched_first {
        r.notes.push(format!("unmatched in {}: {u}", a.name));
    }
    for u in &cert.unmatched_second {
        r.notes.push(format!("unmatched in {}: {u}", b.name));
    }
    Ok(())
}

pub fn run(command: Command, scenario: &str, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let s = resolve(scenario)?;
    run_scenario(command, &s, opts, start)
}

pub fn run_scenario(
    command: Command,
    s: &Scenario,
    opts: &Options,
    start: Instant,
) -> Result<Report> {
    let gamma_name = opts
        .gamma
        .clone()
        .unwrap_or_else(|| s.default_gamma.clone());
    let mu = parse_rational(&opts.cutoff_mu)
        .filter(|q| q > &BigRational::from_integer(0.into()))
        .ok_or_else(|| Error::Parse(format!("bad --cutoff-mu {:?}", opts.cutoff_mu)))?;
    let ctx = Ctx {
        opts,
        gamma: parse_gamma_arg(&gamma_name)?,
        mu,
    };
    let mut r = Report::new(command.name(), &s.name, &gamma_name);
    if matches!(
        command,
        Command::Spectrum | Command::Compare | Command::Heat
    ) {
        r.cutoff = Some(cutoff_text(s, &ctx));
    }
    match command {
        Command::Sectors => sectors(s, &ctx, &mut r)?,
        Command::Spectrum => spectrum(s, &ctx, &mut r)?,
        Command::Compare => compare(s, &ctx, &mut r)?,
        Command::Heat => heat(s, &ctx, &mut r)?,
        Command::Sunada => sunada(s, &ctx, &mut r)?,
        Command::Certify => certify(s, &ctx, &mut r)?,
    }
    if opts.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(r)
}
