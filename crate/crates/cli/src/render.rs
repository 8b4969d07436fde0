use std::fmt::Write;

use asray_core::ray::{Evidence, Scope};

use crate::config::Format;
use crate::document::CertificateDocument;

/// Long per-layer sequences are cut to this many entries in text output.
const SHOWN: usize = 24;

pub fn render(doc: &CertificateDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Text => text(doc),
    }
}

fn seq<T: ToString>(xs: &[T]) -> String {
    let mut parts: Vec<String> = xs.iter().take(SHOWN).map(T::to_string).collect();
    if xs.len() > SHOWN {
        parts.push(format!("... ({} total)", xs.len()));
    }
    format!("[{}]", parts.join(", "))
}

fn pair<T: std::fmt::Display>(p: Option<(T, T)>) -> String {
    p.map_or_else(|| "none".to_owned(), |(a, b)| format!("({a}, {b})"))
}

fn text(doc: &CertificateDocument) -> String {
    if let Some(numbering) = &doc.numbering {
        return numbering
            .iter()
            .map(|(v, n)| format!("{v} {n}\n"))
            .collect();
    }
    let mut s = String::new();
    let i = &doc.input;
    let _ = writeln!(s, "command: {}", doc.command);
    let _ = write!(s, "input: {} {}", i.kind, i.source);
    if let Some(root) = i.root {
        let _ = write!(s, " (root {root}, depth {}, margin {})", i.depth, i.margin);
    }
    s.push('\n');
    let _ = writeln!(s, "verdict: {}", doc.verdict.as_str());
    let _ = match doc.scope {
        Scope::Exact => writeln!(s, "scope: exact"),
        Scope::Prefix { depth, margin } => {
            writeln!(s, "scope: prefix (depth {depth}, margin {margin})")
        }
    };
    let constants: Vec<String> = doc
        .constants
        .present()
        .into_iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let _ = writeln!(s, "constants: {}", constants.join(" "));

    if let Some(r) = &doc.ray {
        let shown: Vec<String> = r.arrow_prefix.iter().map(|v| v.to_string()).collect();
        let more = if r.arrow_length > shown.len() {
            ", ..."
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "arrow: [{}{more}] (length {})",
            shown.join(", "),
            r.arrow_length
        );
        let _ = writeln!(
            s,
            "certified layers: 0..={} (margin {}{})",
            r.last_layer,
            r.margin,
            if r.margin_satisfied {
                ""
            } else {
                ", below the required margin"
            }
        );
        let _ = writeln!(s, "layer sizes: {}", seq(&r.layer_sizes));
        let _ = writeln!(s, "max degree per layer: {}", seq(&r.max_degree_per_layer));
        let _ = writeln!(s, "cover distance per layer: {}", seq(&r.cover_per_layer));
        let _ = writeln!(
            s,
            "sphere radius per layer: {}",
            seq(&r.sphere_radius_per_layer)
        );
        let _ = writeln!(
            s,
            "numbering: forward witness {}, inverse witness {}, asymorphism {}",
            pair(r.forward_witness),
            pair(r.inverse_witness),
            r.numbering_is_asymorphism
        );
        for e in &r.evidence {
            let _ = match e {
                Evidence::DegreeUnbounded { degrees, witnesses } => writeln!(
                    s,
                    "evidence: degree grows {} at {}",
                    seq(degrees),
                    seq(witnesses)
                ),
                Evidence::SphereRadiusDiverges { radii } => {
                    writeln!(s, "evidence: sphere radii grow {}", seq(radii))
                }
                Evidence::CoverRadiusDiverges { radii } => {
                    writeln!(s, "evidence: cover distances grow {}", seq(radii))
                }
            };
        }
    }
    if let Some(t) = &doc.tree {
        let closed = t.closed.iter().filter(|&&c| c).count();
        let _ = writeln!(
            s,
            "component sizes: {} ({closed} of {} closed)",
            seq(&t.sizes),
            t.sizes.len()
        );
        let _ = writeln!(s, "component sizes bounded: {}", t.asymptotic_ray);
    }
    if let Some(b) = &doc.bounded {
        let _ = writeln!(s, "vertices: {}, diameter: {}", b.vertex_count, b.diameter);
        if let Some(c) = &b.against {
            let _ = writeln!(
                s,
                "against {}: vertices {}, diameter {}, asymorphic {}",
                c.source, c.vertex_count, c.diameter, c.asymorphic
            );
        }
    }
    if let Some(m) = &doc.map {
        let _ = writeln!(s, "target: {}, mapped vertices: {}", m.target, m.mapped);
        let _ = writeln!(s, "forward witness: {}", pair(m.forward_witness));
        let _ = writeln!(s, "bijective: {}", m.bijective);
        if m.bijective {
            let _ = writeln!(s, "inverse witness: {}", pair(m.inverse_witness));
        }
        if let Some(f) = m.oracle_forward_m {
            let _ = writeln!(s, "pairwise check: forward_m={f}");
        }
    }
    if let Some(a) = &doc.axioms {
        for (name, p) in [
            ("lower symmetric", &a.lower_symmetric),
            ("upper symmetric", &a.upper_symmetric),
            ("lower multiplicative", &a.lower_multiplicative),
            ("upper multiplicative", &a.upper_multiplicative),
        ] {
            let _ = write!(s, "{name}: {}", p.holds);
            if let Some(c) = &p.counterexample {
                let _ = write!(
                    s,
                    " (fails at alpha={} beta={}, clause {})",
                    c.alpha, c.beta, c.clause
                );
            }
            s.push('\n');
        }
    }
    s
}
