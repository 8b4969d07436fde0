use std::fs;
use std::path::Path;

use asray_core::ballean::{check_axioms, FiniteBallStructure};
use asray_core::graph::{explore_with_budget, EdgeListGraph};
use asray_core::morphisms::{
    bounded_classification, check_asymorphism, edge_lipschitz, global_lipschitz_oracle,
    MetricSpace, RayPrefix, VertexMap, ORACLE_MAX_VERTICES,
};
use asray_core::ray::{
    certify_ray, check_tree_agreement, component_size_decide, construct_numbering, find_arrow,
    tree_decompose, ComponentSizeVerdict, MarginPolicy, RayAnalysis, Scope, TreeDecomposition,
    Verdict,
};
use asray_core::{AdjacencyOracle, Error, GeneratorSpec, Truncation, VertexId};

use crate::config::{CommandConfig, InputSource, RunConfig};
use crate::document::{
    AssignmentSample, BoundedSection, CertificateDocument, Classification, Constants, InputEcho,
    MapSection, RaySection, TreeSection, VerdictKind, SCHEMA_VERSION,
};
use crate::CliError;

/// Finite inputs are explored until exhausted, whatever `--depth` says.
const EXHAUST: usize = 1 << 40;
/// Largest graph `axioms` will tabulate.
const AXIOMS_MAX_VERTICES: usize = 256;
const ARROW_PREFIX: usize = 32;
const ASSIGNMENT_SAMPLES: usize = 16;
const COMPONENT_SAMPLES: usize = 8;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn in_file<T>(path: &Path, r: asray_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::InFile {
        path: path.to_owned(),
        source,
    })
}

fn describe(source: &InputSource) -> (&'static str, String) {
    match source {
        InputSource::EdgeList(p) => ("edge-list", p.display().to_string()),
        InputSource::Generator(s) => ("generator", s.clone()),
    }
}

/// Explores an input: edge lists and finite generators to exhaustion,
/// infinite generators to `depth`.
pub fn load(
    source: &InputSource,
    root: Option<VertexId>,
    depth: usize,
    budget: usize,
) -> Result<Truncation, CliError> {
    match source {
        InputSource::EdgeList(path) => {
            let g = in_file(path, EdgeListGraph::parse(&read(path)?))?;
            let root = root.unwrap_or_else(|| g.origin());
            let t = explore_with_budget(&g, root, EXHAUST, budget)?;
            if let Some(v) = g.vertices().find(|&v| !t.contains(v)) {
                return Err(Error::Disconnected(v).into());
            }
            Ok(t)
        }
        InputSource::Generator(spec) => {
            let g: GeneratorSpec = spec.parse()?;
            let depth = if g.is_finite() { EXHAUST } else { depth };
            let root = root.unwrap_or_else(|| g.origin());
            Ok(explore_with_budget(&g, root, depth, budget)?)
        }
    }
}

struct Run<'a> {
    config: &'a RunConfig,
    echo: InputEcho,
}

impl Run<'_> {
    fn document(
        &self,
        verdict: VerdictKind,
        constants: Constants,
        scope: Scope,
    ) -> CertificateDocument {
        CertificateDocument {
            schema_version: SCHEMA_VERSION.into(),
            command: self.config.command.name().into(),
            input: self.echo.clone(),
            verdict,
            constants,
            scope,
            ray: None,
            tree: None,
            bounded: None,
            map: None,
            axioms: None,
            numbering: None,
        }
    }

    fn prefix_scope(&self, margin: usize) -> Scope {
        Scope::Prefix {
            depth: self.config.depth,
            margin,
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<CertificateDocument, CliError> {
    let margin = match config.margin {
        MarginPolicy::Auto => "auto".to_owned(),
        MarginPolicy::Explicit(m) => m.to_string(),
    };
    let (kind, source) = match (&config.input, &config.command) {
        (Some(input), _) => describe(input),
        (
            None,
            CommandConfig::Axioms {
                ball_table: Some(p),
            },
        ) => ("ball-table", p.display().to_string()),
        (None, _) => return Err(CliError::Usage("no input given".into())),
    };
    let mut run = Run {
        config,
        echo: InputEcho {
            kind: kind.into(),
            source,
            root: None,
            depth: config.depth,
            margin,
        },
    };
    if let CommandConfig::Axioms {
        ball_table: Some(path),
    } = &config.command
    {
        return axioms_from_table(&run, path);
    }
    let input = config.input.as_ref().expect("validated");
    if let (CommandConfig::Axioms { .. }, InputSource::Generator(spec)) = (&config.command, input) {
        if !spec.parse::<GeneratorSpec>()?.is_finite() {
            return Err(CliError::Usage(format!(
                "axioms needs a finite input; {spec} is infinite"
            )));
        }
    }
    let t = load(input, config.root, config.depth, config.max_vertices)?;
    run.echo.root = Some(t.root());
    match &config.command {
        CommandConfig::Analyze { against } => analyze(&run, &t, against.as_ref()),
        CommandConfig::CheckMap { map, target } => check_map(&run, &t, map, target.as_ref()),
        CommandConfig::Axioms { .. } => axioms(&run, &t),
        CommandConfig::Decompose => decompose(&run, &t),
        CommandConfig::Numbering => numbering(&run, &t),
    }
}

fn ray_section(a: &RayAnalysis, t: &Truncation) -> RaySection {
    let arrow = a.arrow.vertices();
    let cert = match &a.verdict {
        Verdict::Certificate(c) => Some(c),
        Verdict::Refutation(_) => None,
    };
    RaySection {
        arrow_prefix: arrow[..arrow.len().min(ARROW_PREFIX)].to_vec(),
        arrow_length: arrow.len(),
        margin: a.margin,
        margin_satisfied: a.margin_satisfied,
        last_layer: a.last_layer,
        layer_sizes: a.layers.sizes.clone(),
        max_degree_per_layer: a.layers.max_degree.clone(),
        cover_per_layer: a.layers.cover.clone(),
        sphere_radius_per_layer: a.layers.sphere_radius.clone(),
        sphere_centers: a.layers.sphere_center.clone(),
        assignment_samples: a
            .assignment
            .iter()
            .zip(t.vertices())
            .take(ASSIGNMENT_SAMPLES)
            .map(|(&arrow_index, &vertex)| AssignmentSample {
                vertex,
                arrow_index,
            })
            .collect(),
        forward_witness: a.numbering.forward.witness,
        inverse_witness: a
            .numbering
            .inverse
            .witness
            .map(|(i, j)| (VertexId(i.0), VertexId(j.0))),
        numbering_is_asymorphism: a.numbering.is_asymorphism,
        proof_k: cert.map(|c| c.proof_k),
        degree_bound: cert.map(|c| c.degree_bound),
        forward_within_2alpha_plus_1: cert.map(|c| c.forward_within_2alpha_plus_1),
        inverse_within_2alpha_plus_1_times_alpha_plus_1: cert
            .map(|c| c.inverse_within_2alpha_plus_1_times_alpha_plus_1),
        evidence: match &a.verdict {
            Verdict::Refutation(r) => r.evidence.clone(),
            Verdict::Certificate(_) => Vec::new(),
        },
    }
}

fn tree_section(td: &TreeDecomposition, v: &ComponentSizeVerdict, checked: bool) -> TreeSection {
    TreeSection {
        sizes: td.sizes.clone(),
        closed: td.closed.clone(),
        components_sample: td
            .components
            .iter()
            .take(COMPONENT_SAMPLES)
            .cloned()
            .collect(),
        asymptotic_ray: v.asymptotic_ray,
        agreement_checked: checked,
    }
}

/// The tree path, when the explored region is a tree, cross-checked against
/// `analysis` when one is given.
fn tree_path(
    t: &Truncation,
    analysis: Option<&RayAnalysis>,
    s: u64,
) -> Result<Option<(TreeDecomposition, ComponentSizeVerdict)>, CliError> {
    if !(t.is_tree_backed() || t.is_acyclic()) {
        return Ok(None);
    }
    let arrow = match analysis {
        Some(a) => a.arrow.clone(),
        None => find_arrow(t)?,
    };
    let td = tree_decompose(t, &arrow)?;
    let verdict = component_size_decide(&td, s);
    if let Some(a) = analysis {
        check_tree_agreement(t, a, &td, &verdict)?;
    }
    Ok(Some((td, verdict)))
}

fn analyze(
    run: &Run,
    t: &Truncation,
    against: Option<&InputSource>,
) -> Result<CertificateDocument, CliError> {
    if t.is_complete() {
        return classify(run, t, against);
    }
    if against.is_some() {
        return Err(CliError::Usage(
            "--against-* classifies finite graphs; the input is infinite".into(),
        ));
    }
    let a = certify_ray(t, run.config.margin)?;
    let s = a.max_degree();
    let tree = tree_path(t, Some(&a), s)?;
    let mut constants = Constants {
        max_degree: Some(s),
        ..Constants::default()
    };
    if let Verdict::Certificate(c) = &a.verdict {
        constants.r = Some(c.r);
        constants.alpha = Some(c.alpha);
        constants.forward_m = Some(c.forward_m);
        constants.inverse_m = Some(c.inverse_m);
    }
    if let Some((_, v)) = &tree {
        constants.t = Some(v.t);
        constants.s = Some(v.s);
    }
    let verdict = if a.is_certificate() {
        VerdictKind::AsymptoticRay
    } else {
        VerdictKind::Refuted
    };
    let mut doc = run.document(verdict, constants, a.scope());
    doc.ray = Some(ray_section(&a, t));
    doc.tree = tree.map(|(td, v)| tree_section(&td, &v, true));
    Ok(doc)
}

fn classify(
    run: &Run,
    t: &Truncation,
    against: Option<&InputSource>,
) -> Result<CertificateDocument, CliError> {
    let diameter = t.diameter()?;
    let mut constants = Constants {
        diameter: Some(diameter),
        vertex_count: Some(t.len() as u64),
        max_degree: Some(t.max_degree() as u64),
        ..Constants::default()
    };
    let mut section = BoundedSection {
        vertex_count: t.len() as u64,
        diameter,
        against: None,
    };
    let mut verdict = VerdictKind::Bounded;
    if let Some(other) = against {
        let u = load(other, None, run.config.depth, run.config.max_vertices)?;
        if !u.is_complete() {
            return Err(CliError::Usage(format!(
                "{} is infinite; only finite graphs are classified",
                describe(other).1
            )));
        }
        let c = bounded_classification(t, &u)?;
        constants.forward_m = c.forward_m;
        constants.inverse_m = c.inverse_m;
        verdict = if c.asymorphic {
            VerdictKind::Asymorphic
        } else {
            VerdictKind::NotAsymorphic
        };
        section.against = Some(Classification {
            source: describe(other).1,
            vertex_count: c.vertex_counts.1 as u64,
            diameter: c.diameters.1,
            asymorphic: c.asymorphic,
            witness: c.witness.map(|w| w.pairs().collect()),
        });
    }
    let mut doc = run.document(verdict, constants, Scope::Exact);
    doc.bounded = Some(section);
    Ok(doc)
}

fn check_map(
    run: &Run,
    src: &Truncation,
    map_path: &Path,
    target: Option<&InputSource>,
) -> Result<CertificateDocument, CliError> {
    let f = in_file(map_path, VertexMap::parse(&read(map_path)?))?;
    let missing = f.missing(src.vertices());
    if !missing.is_empty() {
        let shown: Vec<String> = missing.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Usage(format!(
            "map is undefined at {} vertex(es): {}",
            missing.len(),
            shown.join(" ")
        )));
    }
    if let Some(v) = f.domain().find(|&v| !src.contains(v)) {
        return Err(CliError::Usage(format!(
            "map domain contains {v}, which is not an input vertex"
        )));
    }
    let graph_target = match target {
        Some(source) => Some(load(
            source,
            None,
            run.config.depth,
            run.config.max_vertices,
        )?),
        None => None,
    };
    let ray = RayPrefix {
        len: (f.len() as u64).max(f.pairs().map(|(_, w)| w.0 + 1).max().unwrap_or(0)),
    };
    let dst: &dyn MetricSpace = match &graph_target {
        Some(t) => t,
        None => &ray,
    };
    let target_name = target.map_or_else(|| "ray".to_owned(), |s| describe(s).1);

    let forward = edge_lipschitz(&f, src, dst)?;
    let bijective = f.is_bijective_onto(&dst.points());
    let report = if bijective {
        Some(check_asymorphism(&f, src, dst)?)
    } else {
        None
    };
    let dst_exact = graph_target.as_ref().is_none_or(|t| t.is_complete());
    let small = f.len() <= ORACLE_MAX_VERTICES;
    let (mut oracle_forward, mut oracle_inverse) = (None, None);
    if src.is_complete() && dst_exact && small {
        let (m, _) = global_lipschitz_oracle(&f, src, dst)?;
        if m != forward.edge_constant {
            return Err(Error::Consistency(format!(
                "edge constant {} but pairwise constant {m}",
                forward.edge_constant
            ))
            .into());
        }
        oracle_forward = Some(m);
        if let Some(inv) = f.inverse().filter(|_| bijective) {
            let (m, _) = global_lipschitz_oracle(&inv, dst, src)?;
            let edge = report.as_ref().expect("bijective").inverse_m();
            if m != edge {
                return Err(Error::Consistency(format!(
                    "inverse edge constant {edge} but pairwise constant {m}"
                ))
                .into());
            }
            oracle_inverse = Some(m);
        }
    }
    let verdict = match &report {
        Some(r) if r.is_asymorphism => VerdictKind::Asymorphic,
        Some(_) => VerdictKind::NotAsymorphic,
        None => VerdictKind::Lipschitz,
    };
    let constants = Constants {
        forward_m: Some(forward.edge_constant),
        inverse_m: report.as_ref().map(|r| r.inverse_m()),
        ..Constants::default()
    };
    let scope = if src.is_complete() && graph_target.as_ref().is_some_and(|t| t.is_complete()) {
        Scope::Exact
    } else {
        run.prefix_scope(0)
    };
    let mut doc = run.document(verdict, constants, scope);
    doc.map = Some(MapSection {
        target: target_name,
        mapped: f.len(),
        forward_witness: forward.witness,
        bijective,
        inverse_witness: report.as_ref().and_then(|r| r.inverse.witness),
        is_asymorphism: report.as_ref().map(|r| r.is_asymorphism),
        oracle_forward_m: oracle_forward,
        oracle_inverse_m: oracle_inverse,
    });
    Ok(doc)
}

fn axioms_doc(run: &Run, bs: &FiniteBallStructure, constants: Constants) -> CertificateDocument {
    let report = check_axioms(bs);
    let verdict = if report.is_ballean {
        VerdictKind::Ballean
    } else {
        VerdictKind::NotBallean
    };
    let mut doc = run.document(verdict, constants, Scope::Exact);
    doc.axioms = Some(report);
    doc
}

fn axioms_from_table(run: &Run, path: &Path) -> Result<CertificateDocument, CliError> {
    let bs = in_file(path, FiniteBallStructure::parse_ball_table(&read(path)?))?;
    let constants = Constants {
        vertex_count: Some(bs.support().len() as u64),
        ..Constants::default()
    };
    Ok(axioms_doc(run, &bs, constants))
}

fn axioms(run: &Run, t: &Truncation) -> Result<CertificateDocument, CliError> {
    if !t.is_complete() {
        return Err(CliError::Usage("axioms needs a finite input".into()));
    }
    if t.len() > AXIOMS_MAX_VERTICES {
        return Err(Error::Scale(format!(
            "{} vertices; axioms tabulates at most {AXIOMS_MAX_VERTICES}",
            t.len()
        ))
        .into());
    }
    let bs = FiniteBallStructure::from_truncation(t, None)?;
    let constants = Constants {
        diameter: Some(t.diameter()?),
        vertex_count: Some(t.len() as u64),
        ..Constants::default()
    };
    Ok(axioms_doc(run, &bs, constants))
}

fn decompose(run: &Run, t: &Truncation) -> Result<CertificateDocument, CliError> {
    if t.is_complete() {
        let deepest = t.layer_count() - 1;
        return Err(Error::ArrowTooShort {
            reached: deepest,
            requested: run.config.depth.max(deepest + 1),
        }
        .into());
    }
    if !(t.is_tree_backed() || t.is_acyclic()) {
        let arrow = find_arrow(t)?;
        tree_decompose(t, &arrow)?;
    }
    let a = certify_ray(t, run.config.margin)?;
    let s = a.max_degree();
    let (td, v) = tree_path(t, Some(&a), s)?.expect("acyclic");
    let constants = Constants {
        t: Some(v.t),
        s: Some(v.s),
        max_degree: Some(s),
        r: a.is_certificate().then(|| a.r()),
        ..Constants::default()
    };
    let verdict = if v.asymptotic_ray {
        VerdictKind::AsymptoticRay
    } else {
        VerdictKind::Refuted
    };
    let mut doc = run.document(verdict, constants, a.scope());
    doc.tree = Some(tree_section(&td, &v, true));
    Ok(doc)
}

fn numbering(run: &Run, t: &Truncation) -> Result<CertificateDocument, CliError> {
    let (f, scope) = if t.is_complete() {
        (construct_numbering(t, t.layer_count() - 1), Scope::Exact)
    } else {
        let a = certify_ray(t, run.config.margin)?;
        (construct_numbering(t, a.last_layer), a.scope())
    };
    let constants = Constants {
        vertex_count: Some(f.len() as u64),
        ..Constants::default()
    };
    let mut doc = run.document(VerdictKind::Numbered, constants, scope);
    doc.numbering = Some(f.pairs().collect());
    Ok(doc)
}
