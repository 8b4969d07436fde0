//! Acceptance criteria 1-9, one PASS/FAIL line each.
//!
//! Every expected value is either a closed form checked here or recomputed by
//! the brute-force oracles in the shared support module.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use asray_cli::config::CommandConfig;
use asray_cli::document::{CertificateDocument, VerdictKind};
use asray_cli::{execute, Format, InputSource, RunConfig};
use asray_core::ballean::{check_axioms, FiniteBallStructure};
use asray_core::graph::{explore, EdgeListGraph};
use asray_core::morphisms::{edge_lipschitz, global_lipschitz_oracle, VertexMap};
use asray_core::ray::{certify_ray, MarginPolicy, Verdict};
use asray_core::{GeneratorSpec, Truncation, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{brute, pairwise_constant, random_connected_graph, Region};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn config(command: CommandConfig, input: InputSource, depth: usize) -> RunConfig {
    RunConfig {
        input: Some(input),
        root: None,
        depth,
        margin: MarginPolicy::Auto,
        format: Format::Json,
        out: None,
        max_vertices: asray_core::graph::DEFAULT_VERTEX_BUDGET,
        command,
    }
}

fn analyze(spec: &str, depth: usize) -> Result<CertificateDocument, String> {
    let c = config(
        CommandConfig::Analyze { against: None },
        InputSource::Generator(spec.into()),
        depth,
    );
    execute(&c).map_err(|e| format!("{spec}@{depth}: {e}"))
}

fn gen(spec: &str) -> GeneratorSpec {
    spec.parse().unwrap()
}

fn edge_truncation(n: usize, edges: &[(u64, u64)]) -> Truncation {
    let g =
        EdgeListGraph::from_edges(edges.iter().map(|&(u, v)| (VertexId(u), VertexId(v)))).unwrap();
    explore(&g, VertexId(0), n).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Vec<(u64, u64)> {
    let extra = rng.gen_range(0..n);
    random_connected_graph(rng, n, extra)
}

fn write_edges(dir: &Path, name: &str, edges: &[(u64, u64)]) -> std::path::PathBuf {
    let path = dir.join(name);
    let text: String = edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
    fs::write(&path, text).unwrap();
    path
}

/// Corpus inputs that are asymorphic to the ray.
const CERTIFIED: &[&str] = &[
    "ray",
    "comb:inf",
    "ladder:inf",
    "caterpillar:const:1",
    "caterpillar:const:2",
    "caterpillar:const:3",
];

/// Golden constants at depth 1000, checked against brute force at small depth.
fn golden_certificates() -> Outcome {
    type Golden<'a> = (&'a str, u64, u64, Option<(u64, u64)>);
    let golden: [Golden; 3] = [
        ("comb:inf", 1, 1, Some((3, 3))),
        ("ladder:inf", 1, 1, None),
        ("ray", 0, 0, Some((1, 1))),
    ];
    let mut slowest = Duration::ZERO;
    for (spec, r, alpha, ms) in golden {
        for depth in [20, 30] {
            let b = brute(spec, depth);
            ensure!(
                (b.r as u64, b.alpha as u64) == (r, alpha),
                "{spec}: brute force at depth {depth} gives r={} alpha={}",
                b.r,
                b.alpha
            );
            if let Some(m) = ms {
                ensure!(
                    (b.forward as u64, b.inverse as u64) == m,
                    "{spec}: brute force constants ({}, {})",
                    b.forward,
                    b.inverse
                );
            }
        }
        let start = Instant::now();
        let doc = analyze(spec, 1000)?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure!(elapsed < Duration::from_secs(5), "{spec} took {elapsed:?}");
        ensure!(
            doc.verdict == VerdictKind::AsymptoticRay,
            "{spec}: {:?}",
            doc.verdict
        );
        let c = &doc.constants;
        ensure!(
            (c.r, c.alpha) == (Some(r), Some(alpha)),
            "{spec}: r={:?} alpha={:?}",
            c.r,
            c.alpha
        );
        if let Some((f, i)) = ms {
            ensure!(
                (c.forward_m, c.inverse_m) == (Some(f), Some(i)),
                "{spec}: forward_m={:?} inverse_m={:?}",
                c.forward_m,
                c.inverse_m
            );
        }
    }
    Ok(format!("3 families at depth 1000, slowest {slowest:.2?}"))
}

fn refutations() -> Outcome {
    let doc = analyze("kary:2:inf", 12)?;
    ensure!(
        doc.verdict == VerdictKind::Refuted,
        "kary:2:inf {:?}",
        doc.verdict
    );
    let radii = &doc.ray.as_ref().unwrap().sphere_radius_per_layer;
    let region = Region::around(&gen("kary:2:inf"), 10);
    for (n, &radius) in radii.iter().enumerate().take(9) {
        let exhaustive = region.set_radius(&region.sphere(n)) as u64;
        ensure!(
            radius == n as u64 && exhaustive == n as u64,
            "layer {n}: engine {radius} exhaustive {exhaustive}"
        );
    }

    let doc = analyze("caterpillar:linear", 50)?;
    ensure!(
        doc.verdict == VerdictKind::Refuted,
        "caterpillar {:?}",
        doc.verdict
    );
    let tree = doc.tree.as_ref().ok_or("caterpillar has no tree section")?;
    let closed = tree.closed.iter().take_while(|&&c| c).count();
    ensure!(closed >= 26, "only {closed} closed components");
    for n in 0..closed {
        ensure!(
            tree.sizes[n] == n as u64 + 1,
            "|T(a_{n})| = {}",
            tree.sizes[n]
        );
    }
    ensure!(!tree.asymptotic_ray, "component sizes judged bounded");
    Ok(format!(
        "binary tree radii 0..=8, caterpillar sizes 1..={closed}"
    ))
}

fn edge_constant_equals_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    for case in 0..200 {
        let (n1, n2) = (rng.gen_range(2..=12), rng.gen_range(2..=12));
        let (e1, e2) = (random_graph(&mut rng, n1), random_graph(&mut rng, n2));
        let (t1, t2) = (edge_truncation(n1, &e1), edge_truncation(n2, &e2));
        let images: Vec<u64> = (0..n1).map(|_| rng.gen_range(0..n2 as u64)).collect();
        let f = VertexMap::from_pairs(
            (0..n1 as u64).map(|v| (VertexId(v), VertexId(images[v as usize]))),
        )
        .unwrap();
        let edge = edge_lipschitz(&f, &t1, &t2)
            .map_err(|e| e.to_string())?
            .edge_constant;
        let (global, _) = global_lipschitz_oracle(&f, &t1, &t2).map_err(|e| e.to_string())?;
        let (r1, r2) = (Region::from_edges(n1, &e1), Region::from_edges(n2, &e2));
        let domain: Vec<u64> = (0..n1 as u64).collect();
        let brute = pairwise_constant(
            &domain,
            |u, v| r1.d(u, v),
            |a, b| r2.d(a, b),
            |v| images[v as usize],
        );
        ensure!(
            edge == global && global == brute as u64,
            "case {case}: edge {edge} oracle {global} brute {brute}"
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("200/200 maps agree in {elapsed:.2?}"))
}

fn ballean_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..100 {
        let n = rng.gen_range(2..=15);
        let edges = random_graph(&mut rng, n);
        let t = edge_truncation(n, &edges);
        let diam = Region::from_edges(n, &edges).diameter() as u64;
        let bs = FiniteBallStructure::from_truncation(&t, None).map_err(|e| e.to_string())?;
        ensure!(
            bs.radii() == (0..=diam).collect::<Vec<_>>(),
            "case {case}: radii"
        );
        let r = check_axioms(&bs);
        ensure!(
            r.lower_symmetric.holds
                && r.upper_symmetric.holds
                && r.lower_multiplicative.holds
                && r.upper_multiplicative.holds,
            "case {case}: {r:?}"
        );
        // radii stop at the diameter, so α+β is capped there
        for w in &r.upper_multiplicative.witnesses {
            ensure!(
                w.radii == [(w.alpha + w.beta).min(diam)],
                "case {case}: gamma {:?} for ({}, {})",
                w.radii,
                w.alpha,
                w.beta
            );
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("asymmetric.txt");
    fs::write(&table, "support: 2, radii: 1\n0 1: 0 1\n1 1: 1\n").unwrap();
    let mut c = config(
        CommandConfig::Axioms {
            ball_table: Some(table),
        },
        InputSource::Generator(String::new()),
        1,
    );
    c.input = None;
    let doc = execute(&c).map_err(|e| e.to_string())?;
    let report = doc.axioms.ok_or("no axiom report")?;
    ensure!(
        !report.upper_symmetric.holds,
        "asymmetric pair is upper symmetric"
    );
    ensure!(doc.verdict == VerdictKind::NotBallean, "{:?}", doc.verdict);
    Ok("100/100 graphs are balleans, asymmetric pair is not upper symmetric".into())
}

fn certified_relations() -> Outcome {
    let depth = 40;
    let mut pairs = 0usize;
    for spec in CERTIFIED {
        let g = gen(spec);
        let t = explore(&g, VertexId(0), depth).unwrap();
        let a = certify_ray(&t, MarginPolicy::Auto).map_err(|e| e.to_string())?;
        let Verdict::Certificate(c) = &a.verdict else {
            return Err(format!("{spec} not certified"));
        };
        ensure!(
            c.alpha <= 2 * c.r,
            "{spec}: alpha {} > 2r {}",
            c.alpha,
            2 * c.r
        );
        let region = Region::around(&g, 2 * depth);
        let arrow: Vec<u64> = a.arrow.vertices().iter().map(|v| v.0).collect();
        for n in 0..=a.last_layer {
            for (k, &ak) in arrow.iter().enumerate().take(a.last_layer + 1) {
                if k.abs_diff(n) as u64 <= c.r {
                    continue;
                }
                pairs += 1;
                if let Some(v) = region
                    .sphere(n)
                    .into_iter()
                    .find(|&v| region.d(v, ak) as u64 <= c.r)
                {
                    return Err(format!("{spec}: {v} in S_{n} lies within r of a_{k}"));
                }
            }
        }
        let mut next = 0u64;
        for n in 0..=a.last_layer {
            let mut images: Vec<u64> = t
                .layer(n)
                .iter()
                .map(|&v| {
                    c.numbering
                        .get(v)
                        .map(|i| i.0)
                        .ok_or(format!("{spec}: {v} unnumbered"))
                })
                .collect::<Result<_, _>>()?;
            images.sort_unstable();
            let expected: Vec<u64> = (next..next + images.len() as u64).collect();
            ensure!(images == expected, "{spec}: layer {n} maps to {images:?}");
            next += images.len() as u64;
        }
        ensure!(
            c.numbering.len() as u64 == next,
            "{spec}: numbering has extra vertices"
        );
    }
    Ok(format!(
        "{} certificates, {pairs} disjoint (layer, arrow) pairs",
        CERTIFIED.len()
    ))
}

fn degree_bound() -> Outcome {
    let mut count = 0;
    for spec in CERTIFIED {
        for depth in [50, 200, 1000] {
            let doc = analyze(spec, depth)?;
            let c = &doc.constants;
            let (Some(d), Some(m)) = (c.max_degree, c.forward_m) else {
                return Err(format!("{spec}@{depth}: no certificate"));
            };
            ensure!(d <= 2 * m, "{spec}@{depth}: max_degree {d} > 2*{m}");
            count += 1;
        }
    }
    Ok(format!("{count} certificates, max_degree <= 2*forward_m"))
}

fn tree_agreement() -> Outcome {
    let corpus = [
        ("ray", 100),
        ("comb:inf", 200),
        ("caterpillar:const:1", 100),
        ("caterpillar:const:2", 100),
        ("caterpillar:const:3", 100),
        ("caterpillar:linear", 60),
        ("kary:2:inf", 12),
        ("kary:3:inf", 8),
    ];
    let mut components = 0;
    for (spec, depth) in corpus {
        let doc = analyze(spec, depth)?;
        let tree = doc
            .tree
            .as_ref()
            .ok_or(format!("{spec}: no tree section"))?;
        let certified = doc.verdict == VerdictKind::AsymptoticRay;
        ensure!(
            tree.asymptotic_ray == certified,
            "{spec}: criteria {certified}, component sizes {}",
            tree.asymptotic_ray
        );
        if certified {
            let (s, r) = (doc.constants.s.unwrap(), doc.constants.r.unwrap());
            let bound = s.pow(r as u32) + 1;
            for (n, (&size, &closed)) in tree.sizes.iter().zip(&tree.closed).enumerate() {
                if closed {
                    components += 1;
                    ensure!(size <= bound, "{spec}: |T(a_{n})| = {size} > {bound}");
                }
            }
        }
    }
    Ok(format!(
        "{} trees agree, {components} components within s^r+1",
        corpus.len()
    ))
}

fn bounded_classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let dir = tempfile::tempdir().unwrap();
    let mut asymorphic = 0;
    for case in 0..50 {
        let n1 = rng.gen_range(2..=10);
        let n2 = if rng.gen_bool(0.5) {
            n1
        } else {
            rng.gen_range(2..=10)
        };
        let e1 = random_graph(&mut rng, n1);
        let e2 = random_graph(&mut rng, n2);
        let p1 = write_edges(dir.path(), &format!("a{case}.txt"), &e1);
        let p2 = write_edges(dir.path(), &format!("b{case}.txt"), &e2);
        let c = config(
            CommandConfig::Analyze {
                against: Some(InputSource::EdgeList(p2)),
            },
            InputSource::EdgeList(p1),
            64,
        );
        let doc = execute(&c).map_err(|e| format!("case {case}: {e}"))?;
        let is_asym = doc.verdict == VerdictKind::Asymorphic;
        ensure!(
            is_asym == (n1 == n2),
            "case {case}: {n1} vs {n2} gives {:?}",
            doc.verdict
        );
        if !is_asym {
            continue;
        }
        asymorphic += 1;
        let (r1, r2) = (Region::from_edges(n1, &e1), Region::from_edges(n2, &e2));
        let cap = r1.diameter().max(r2.diameter()) as u64;
        let witness = doc.bounded.unwrap().against.unwrap().witness.unwrap();
        let forward: Vec<u64> = {
            let mut f = vec![0; n1];
            for (v, w) in &witness {
                f[v.0 as usize] = w.0;
            }
            f
        };
        let mut backward = vec![0; n2];
        for (v, &w) in forward.iter().enumerate() {
            backward[w as usize] = v as u64;
        }
        let d1: Vec<u64> = (0..n1 as u64).collect();
        let fm = pairwise_constant(
            &d1,
            |u, v| r1.d(u, v),
            |a, b| r2.d(a, b),
            |v| forward[v as usize],
        );
        let im = pairwise_constant(
            &d1,
            |u, v| r2.d(u, v),
            |a, b| r1.d(a, b),
            |v| backward[v as usize],
        );
        let c = &doc.constants;
        ensure!(
            c.forward_m == Some(fm as u64) && c.inverse_m == Some(im as u64),
            "case {case}: reported {:?}/{:?}, brute {fm}/{im}",
            c.forward_m,
            c.inverse_m
        );
        ensure!(
            fm as u64 <= cap && im as u64 <= cap,
            "case {case}: {fm}/{im} > {cap}"
        );
    }
    Ok(format!("50/50 pairs, {asymorphic} asymorphic"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_asray");
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let map = d.join("comb.map");
    let out = Command::new(bin)
        .args(["numbering", "-g", "comb:inf", "--depth", "10"])
        .output()
        .unwrap();
    fs::write(&map, &out.stdout).unwrap();
    let edges = write_edges(d, "g.txt", &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)]);
    let table = d.join("table.txt");
    fs::write(&table, "support: 2, radii: 1\n0 1: 0 1\n1 1: 1\n").unwrap();
    let (map, edges, table) = (
        map.display().to_string(),
        edges.display().to_string(),
        table.display().to_string(),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["analyze", "-g", "comb:inf", "--depth", "300"],
        vec![
            "analyze",
            "-g",
            "ladder:inf",
            "--depth",
            "100",
            "--margin",
            "3",
        ],
        vec!["analyze", "-g", "kary:2:inf", "--depth", "10"],
        vec!["analyze", "-g", "caterpillar:linear", "--depth", "40"],
        vec!["analyze", "-i", &edges, "--against-gen", "cycle:5"],
        vec![
            "check-map",
            "-g",
            "comb:inf",
            "--depth",
            "10",
            "--map",
            &map,
        ],
        vec!["axioms", "-g", "cycle:7"],
        vec!["axioms", "--ball-table", &table],
        vec!["decompose", "-g", "comb:inf", "--depth", "50"],
        vec!["numbering", "-g", "ladder:inf", "--depth", "30"],
        vec!["numbering", "-i", &edges],
    ];
    let mut count = 0;
    for args in &runs {
        for format in ["text", "json"] {
            let run = || {
                Command::new(bin)
                    .args(args)
                    .args(["--format", format])
                    .output()
                    .unwrap()
            };
            let (a, b) = (run(), run());
            ensure!(
                !a.stdout.is_empty() && a.status.code().is_some_and(|c| c < 2),
                "{args:?}: exit {:?}, stderr {}",
                a.status.code(),
                String::from_utf8_lossy(&a.stderr)
            );
            ensure!(
                a.stdout == b.stdout && a.status.code() == b.status.code(),
                "{args:?} --format {format} differs between runs"
            );
            count += 1;
        }
    }
    Ok(format!("{count} invocations byte-identical"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("golden certificates", golden_certificates),
        ("refutations", refutations),
        (
            "edge constant equals pairwise oracle",
            edge_constant_equals_oracle,
        ),
        ("ballean axioms", ballean_axioms),
        ("certificate internal relations", certified_relations),
        ("degree bound", degree_bound),
        ("tree criterion agreement", tree_agreement),
        ("bounded classification", bounded_classification),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
