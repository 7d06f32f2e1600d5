use std::fmt::Write as _;
use std::io::Read;

use num_rational::BigRational;
use omlkit::born::{self, CMatrix, Hermitian};
use omlkit::greechie::GreechieDiagram;
use omlkit::kalmbach::{self, SetPoset};
use omlkit::lattice::{self, Lattice, LatticeJson, LawCheck, ScanLimit};
use omlkit::polytope::{self, CorrelationPolytope, EventScheme, Membership};
use omlkit::rays::{self, Ray};
use omlkit::states;
use omlkit::{OrthoLattice, FORMAT_VERSION};
use serde_json::{json, Value};

use crate::{
    BornCommand, Cli, Command, Failure, Format, KsCommand, LatticeCommand, Outcome, PolytopeCommand,
    RaysCommand,
};

type Res<T> = std::result::Result<T, Failure>;

fn read_input(path: &str, stdin: &mut dyn Read) -> Res<String> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn no_dot(what: &str) -> Failure {
    Failure::Input(format!("{what} has no DOT output"))
}

fn float(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn done(output: String, verdict: bool) -> Res<Outcome> {
    Ok(Outcome { output, verdict })
}

pub(crate) fn execute(cli: &Cli, stdin: &mut dyn Read) -> Res<Outcome> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Input(format!("tolerance must be positive, got {}", cli.tol)));
    }
    let limit = if cli.no_limit {
        ScanLimit::unlimited()
    } else {
        ScanLimit::at_most(cli.max_elements)
    };
    match &cli.command {
        Command::Lattice(LatticeCommand::Check { file }) => lattice_check(&read_input(file, stdin)?, cli.format, limit),
        Command::Lattice(LatticeCommand::Mo { n }) => lattice_mo(*n, cli.format),
        Command::States { file, seed } => states_cmd(&read_input(file, stdin)?, seed.as_deref(), cli.format),
        Command::Ks(KsCommand::Peres) => ks_peres(cli.format),
        Command::Rays(RaysCommand::Closure { file, cap }) => rays_closure(&read_input(file, stdin)?, *cap, cli.format),
        Command::Kalmbach { file } => kalmbach_cmd(&read_input(file, stdin)?, cli.format),
        Command::Polytope(PolytopeCommand::Facets { file }) => polytope_facets(&read_input(file, stdin)?, cli.format),
        Command::Polytope(PolytopeCommand::Member { file, vector }) => {
            polytope_member(&read_input(file, stdin)?, vector, cli.format)
        }
        Command::Born(BornCommand::Ur { a, b, c, rotated }) => born_ur(*a, *b, *c, *rotated, cli.tol, cli.format),
    }
}

enum Input {
    Ortho(OrthoLattice),
    Plain(Lattice),
}

/// Lattice JSON (with or without complement) or Greechie text.
fn read_lattice(text: &str) -> Res<Input> {
    if text.trim_start().starts_with('{') {
        let j = LatticeJson::parse(text)?;
        return Ok(match j.to_ortho_lattice()? {
            Some(l) => Input::Ortho(l),
            None => Input::Plain(j.to_lattice()?),
        });
    }
    Ok(Input::Ortho(GreechieDiagram::parse(text)?.to_lattice()?))
}

fn law_line(l: &Lattice, check: &LawCheck) -> String {
    match &check.counterexample {
        None => format!("{}: true", check.law.name()),
        Some(w) => {
            let names: Vec<&str> = w.elements.iter().map(|&x| l.label(x)).collect();
            format!(
                "{}: false (witness {}: {} != {})",
                check.law.name(),
                names.join(", "),
                l.label(w.lhs),
                l.label(w.rhs)
            )
        }
    }
}

fn law_json(l: &Lattice, check: &LawCheck) -> Value {
    json!({
        "law": check.law.name(),
        "holds": check.holds(),
        "witness": check.counterexample.as_ref().map(|w| json!({
            "elements": w.elements.iter().map(|&x| l.label(x)).collect::<Vec<_>>(),
            "lhs": l.label(w.lhs),
            "rhs": l.label(w.rhs),
        })),
    })
}

fn lattice_check(text: &str, format: Format, limit: ScanLimit) -> Res<Outcome> {
    let input = read_lattice(text)?;
    let (l, checks): (&Lattice, Vec<LawCheck>) = match &input {
        Input::Ortho(o) => (o.lattice(), o.check_all(limit)?.to_vec()),
        Input::Plain(p) => (p, vec![p.check_distributive(limit)?, p.check_modular(limit)?]),
    };
    let verdict = checks.iter().all(LawCheck::holds);
    let output = match format {
        Format::Dot => l.hasse_dot(),
        Format::Json => json_out(json!({
            "format_version": FORMAT_VERSION,
            "elements": l.len(),
            "orthocomplemented": matches!(input, Input::Ortho(_)),
            "laws": checks.iter().map(|c| law_json(l, c)).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("elements: {}\n", l.len());
            for c in &checks {
                s.push_str(&law_line(l, c));
                s.push('\n');
            }
            if matches!(input, Input::Plain(_)) {
                s.push_str("orthomodular: n/a (no orthocomplement)\n");
            }
            s
        }
    };
    done(output, verdict)
}

fn lattice_mo(n: usize, format: Format) -> Res<Outcome> {
    let l = lattice::mo(n)?;
    let output = match format {
        Format::Dot => l.hasse_dot(),
        Format::Json | Format::Text => l.to_json() + "\n",
    };
    done(output, true)
}

fn states_cmd(text: &str, seed: Option<&str>, format: Format) -> Res<Outcome> {
    let d = GreechieDiagram::parse(text)?;
    let list = match seed {
        Some(atom) => states::symmetric_seed(&d, atom)?,
        None => states::enumerate_states(&d),
    };
    let class = states::classify_states(&d, &list);
    let output = match format {
        Format::Dot => d.to_dot(),
        Format::Json => states::states_json(&d, &list) + "\n",
        Format::Text => {
            let mut s = format!("atoms: {}\ncontexts: {}\n", d.atoms().len(), d.contexts().len());
            if let Some(atom) = seed {
                let _ = writeln!(s, "seed: {atom}");
            }
            let _ = writeln!(s, "states: {}", class.count);
            for (i, st) in list.iter().enumerate() {
                let names: Vec<&str> = st.true_atoms().iter().map(|&a| d.atoms()[a].as_str()).collect();
                let _ = writeln!(s, "  state {}: {}", i + 1, names.join(", "));
            }
            let _ = writeln!(
                s,
                "unital: {}\nseparating: {}\nfull: {}",
                class.unital, class.separating, class.full
            );
            s
        }
    };
    done(output, class.count > 0)
}

fn ks_peres(format: Format) -> Res<Outcome> {
    let r = rays::peres_report()?;
    let verdict = r.generated == 33
        && r.derivation_matches
        && r.closure == 57
        && r.seventeen_close_to_same
        && r.all_triads
        && r.poset_elements == 116
        && r.states == 0;
    let output = match format {
        Format::Dot => {
            let closed = rays::ortho_closure(&rays::peres_rays(), rays::DEFAULT_CLOSURE_CAP)?;
            rays::contexts(&closed)?.to_dot()
        }
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["format_version"] = json!(FORMAT_VERSION);
            json_out(v)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "generated rays: {}", r.generated);
            let _ = writeln!(s, "derivation script reproduces them: {}", r.derivation_matches);
            let _ = writeln!(s, "atoms after orthogeneration: {}", r.closure);
            let _ = writeln!(s, "17 orthogenerators give the same atoms: {}", r.seventeen_close_to_same);
            let _ = writeln!(s, "families of added rays: {}", r.added_families.join(" "));
            let _ = writeln!(s, "contexts: {} (all triads: {})", r.contexts, r.all_triads);
            let _ = writeln!(s, "poset elements: {}", r.poset_elements);
            let _ = writeln!(s, "two-valued states: {}", r.states);
            let _ = writeln!(s, "two-valued states with (1 0 0) true: {}", r.states_with_100_true);
            let _ = writeln!(
                s,
                "verdict: {}",
                if r.states == 0 { "no two-valued state exists" } else { "two-valued states exist" }
            );
            s
        }
    };
    done(output, verdict)
}

fn rays_closure(text: &str, cap: usize, format: Format) -> Res<Outcome> {
    let input = rays::parse_rays(text)?;
    let closed = rays::ortho_closure(&input, cap)?;
    let output = match format {
        Format::Dot => rays::contexts(&closed)?.to_dot(),
        Format::Json => {
            let contexts = rays::contexts(&closed).ok();
            json_out(json!({
                "format_version": FORMAT_VERSION,
                "input": input.len(),
                "closure": closed.len(),
                "rays": closed.iter().map(Ray::label).collect::<Vec<_>>(),
                "contexts": contexts.map(|d| d.contexts().len()),
                "poset_elements": rays::element_count_of_orthoposet(&closed)?,
            }))
        }
        Format::Text => {
            let distinct: std::collections::BTreeSet<&Ray> = input.iter().collect();
            format!(
                "# {} input rays, {} after closure\n{}",
                distinct.len(),
                closed.len(),
                rays::rays_to_text(&closed)
            )
        }
    };
    done(output, true)
}

fn kalmbach_cmd(text: &str, format: Format) -> Res<Outcome> {
    let p = SetPoset::parse(text)?;
    let (k, map) = kalmbach::kalmbach_embedding(&p)?;
    let report = kalmbach::verify_embedding(&map);
    let class = kalmbach::full_state_check(&k)?;
    let verdict = report.passed() && class.separating && class.unital;
    let output = match format {
        Format::Dot => k.hasse_dot(),
        Format::Json => {
            let lattice: Value = serde_json::from_str(&k.to_json()).expect("lattice JSON");
            json_out(json!({
                "format_version": FORMAT_VERSION,
                "source": (0..p.len()).map(|x| p.label(x)).collect::<Vec<_>>(),
                "chains": kalmbach::describe_blocks(&map),
                "lattice": lattice,
                "images": (0..p.len()).map(|x| [p.label(x), k.label(map.images[x]).to_string()]).collect::<Vec<_>>(),
                "checks": report.checks,
                "states": class,
            }))
        }
        Format::Text => {
            let mut s = format!("source elements: {}\n", p.len());
            for d in kalmbach::describe_blocks(&map) {
                let _ = writeln!(s, "chain {} -> atoms {}", d["chain"].join(" < "), d["atoms"].join(" "));
            }
            let _ = writeln!(s, "K(P) elements: {}", k.len());
            for c in &report.checks {
                match &c.witness {
                    None => {
                        let _ = writeln!(s, "{}: pass", c.property);
                    }
                    Some(w) => {
                        let _ = writeln!(s, "{}: FAIL ({w})", c.property);
                    }
                }
            }
            let _ = writeln!(
                s,
                "two-valued states: {} (unital: {}, separating: {})",
                class.count, class.unital, class.separating
            );
            s
        }
    };
    done(output, verdict)
}

fn polytope_facets(text: &str, format: Format) -> Res<Outcome> {
    let scheme = EventScheme::parse(text)?;
    let poly = CorrelationPolytope::new(scheme)?;
    let verdict = polytope::verify_dual_description(&poly.vertices, &poly.h).is_ok();
    let names = poly.scheme.term_names();
    let output = match format {
        Format::Dot => return Err(no_dot("polytope facets")),
        Format::Json => json_out(poly.h.to_json(&names)),
        Format::Text => format!("# terms: {}\n{}", names.join(" "), poly.h.to_text()),
    };
    done(output, verdict)
}

fn rational_str(x: &BigRational) -> String {
    x.to_string()
}

fn polytope_member(text: &str, vector: &str, format: Format) -> Res<Outcome> {
    let scheme = EventScheme::parse(text)?;
    let p = polytope::parse_vector(vector).map_err(|e| Failure::Input(e.to_string()))?;
    if p.len() != scheme.dim() {
        return Err(Failure::Input(format!(
            "vector has {} entries, the scheme has {} terms",
            p.len(),
            scheme.dim()
        )));
    }
    let poly = CorrelationPolytope::new(scheme)?;
    let membership = poly.is_classical(&p)?;
    let names = poly.scheme.term_names();
    let vertex_label = |v: &[BigRational]| {
        format!("({})", v.iter().map(rational_str).collect::<Vec<_>>().join(" "))
    };
    let output = match (&membership, format) {
        (_, Format::Dot) => return Err(no_dot("polytope member")),
        (Membership::Classical { weights }, Format::Json) => json_out(json!({
            "format_version": FORMAT_VERSION,
            "classical": true,
            "weights": poly.vertices.iter().zip(weights)
                .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
                .map(|(v, w)| json!({"vertex": v.iter().map(rational_str).collect::<Vec<_>>(), "weight": rational_str(w)}))
                .collect::<Vec<_>>(),
        })),
        (Membership::NonClassical { violation }, Format::Json) => {
            let rel = if violation.equality { "=" } else { "<=" };
            json_out(json!({
                "format_version": FORMAT_VERSION,
                "classical": false,
                "violated": {
                    "coeffs": violation.constraint.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "bound": violation.constraint.bound.to_string(),
                    "relation": rel,
                    "text": violation.constraint.pretty(&names, rel),
                    "value": rational_str(&violation.value),
                },
            }))
        }
        (Membership::Classical { weights }, Format::Text) => {
            let mut s = String::from("classical: true\n");
            for (v, w) in poly.vertices.iter().zip(weights) {
                if !num_traits::Zero::is_zero(w) {
                    let _ = writeln!(s, "  {} weight {}", vertex_label(v), w);
                }
            }
            s
        }
        (Membership::NonClassical { violation }, Format::Text) => {
            let rel = if violation.equality { "=" } else { "<=" };
            format!(
                "classical: false\nviolated: {} (left side {})\n",
                violation.constraint.pretty(&names, rel),
                violation.value
            )
        }
    };
    done(output, membership.is_classical())
}

fn matrix_text(m: &CMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|j| {
                let z = m.get(i, j);
                if z.im.abs() < 1e-15 {
                    float(z.re)
                } else {
                    format!("{}{:+}i", float(z.re), float(z.im).parse::<f64>().unwrap_or(z.im))
                }
            })
            .collect();
        let _ = writeln!(s, "  [{}]", row.join(", "));
    }
    s
}

fn born_ur(a: f64, b: f64, c: f64, rotated: bool, tol: f64, format: Format) -> Res<Outcome> {
    let u: Hermitian = if rotated {
        born::rotated_ur_tol(a, b, c, tol)?
    } else {
        born::ur_operator_tol(a, b, c, tol)?
    };
    let eigen = u.eigenvalues();
    let mut expected = vec![a + b, b + c, a + c];
    expected.sort_by(f64::total_cmp);
    let eigen_dev = eigen.iter().zip(&expected).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let js = born::reconstruct_j_squared(&u, a, b, c)?;
    let reference = if rotated { born::rotated_j_squared() } else { born::j_squared() };
    let j_dev = js.iter().zip(&reference).map(|(x, y)| x.max_abs_diff(y)).fold(0.0, f64::max);
    let pattern = born::exclusivity_pattern(&u, a, b, c)?;
    let exclusive = pattern.iter().all(|(_, bits)| bits.iter().map(|&x| x as u32).sum::<u32>() == 2);
    let scale = 1.0 + a.abs().max(b.abs()).max(c.abs());
    let verdict = eigen_dev <= 1e-8 * scale && j_dev <= tol.max(1e-9) * scale * scale && exclusive;
    let output = match format {
        Format::Dot => return Err(no_dot("born ur")),
        Format::Json => json_out(json!({
            "format_version": FORMAT_VERSION,
            "rotated": rotated,
            "parameters": [a, b, c],
            "matrix": u.matrix().to_json(),
            "eigenvalues": eigen,
            "expected_eigenvalues": expected,
            "max_eigenvalue_deviation": eigen_dev,
            "j_squared": js.iter().map(CMatrix::to_json).collect::<Vec<_>>(),
            "max_j_squared_deviation": j_dev,
            "exclusivity": pattern.iter().map(|(l, bits)| json!({"eigenvalue": l, "j_squared_values": bits})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("U{} =\n{}", if rotated { " (rotated)" } else { "" }, matrix_text(u.matrix()));
            let ev: Vec<String> = eigen.iter().map(|&x| float(x)).collect();
            let ex: Vec<String> = expected.iter().map(|&x| float(x)).collect();
            let _ = writeln!(s, "eigenvalues: {}", ev.join(" "));
            let _ = writeln!(s, "expected {{a+b, b+c, a+c}}: {}", ex.join(" "));
            let _ = writeln!(s, "J^2 reconstructed from U, max deviation: {:.1e}", j_dev);
            for (l, bits) in &pattern {
                let _ = writeln!(
                    s,
                    "eigenvalue {}: J1^2={} J2^2={} J3^2={}",
                    float(*l),
                    bits[0],
                    bits[1],
                    bits[2]
                );
            }
            s
        }
    };
    done(output, verdict)
}
