use std::fs;
use std::path::{Path, PathBuf};

use quiverstab::format::{point_from_json, quiver_from_json, quiver_to_json, weights_from_json};
use quiverstab::helix::{check_line_bundle_degrees, e_chi_degree};
use quiverstab::rational::{format_rational, parse_rational};
use quiverstab::stability::{move_graph, stability_cone, verdict_from_family, Uncertified};
use quiverstab::{
    anticanonical_character, certify_good, certify_great, character_from_weights, enumerate_cycles,
    evaluate_invariant, extend_spiral, extend_spiral_labeled, get_entry, separation_experiment,
    subrep_supports, CatalogEntry, Certificate, Character, Monomial, Quiver, Relation,
    RepresentationPoint, WeightMatrix, ENTRY_NAMES,
};
use serde::Serialize;
use serde_json::json;

use crate::args::{CharacterArgs, Command, Format, PointArgs, SourceArgs, WeightArgs};

/// Exit 2 for unreadable or malformed input, exit 1 for everything the library rejects.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<quiverstab::Error> for Failure {
    fn from(e: quiverstab::Error) -> Self {
        match e {
            quiverstab::Error::Json(_) | quiverstab::Error::Parse(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

/// Text and JSON renderings of one command's result.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
}

impl Report {
    fn new(text: impl Into<String>, json: serde_json::Value) -> Self {
        Report {
            text: text.into(),
            json,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.trim_end().to_string(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("reports serialize"),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

enum Source {
    Entry(Box<CatalogEntry>),
    File(Quiver),
}

impl Source {
    fn quiver(&self) -> &Quiver {
        match self {
            Source::Entry(e) => e.quiver(),
            Source::File(q) => q,
        }
    }

    fn entry(&self, what: &str) -> Outcome<&CatalogEntry> {
        match self {
            Source::Entry(e) => Ok(e),
            Source::File(_) => Err(Failure::Input(format!(
                "{what} needs a built-in catalog entry (--example), not a quiver file"
            ))),
        }
    }
}

fn load_source(args: &SourceArgs, catalog_dir: Option<&PathBuf>) -> Outcome<Source> {
    if let Some(path) = &args.quiver {
        return Ok(Source::File(quiver_from_json(&read(path)?)?));
    }
    let name = args.example.as_deref().expect("clap requires a source");
    if let Some(dir) = catalog_dir {
        let path = dir.join(format!("{name}.json"));
        if path.is_file() {
            log::info!("loading {name} from {}", path.display());
            return Ok(Source::File(quiver_from_json(&read(&path)?)?));
        }
    }
    Ok(Source::Entry(Box::new(get_entry(name)?)))
}

fn describe_relation(q: &Quiver, r: &Relation) -> String {
    let terms: Vec<String> = r
        .terms()
        .iter()
        .map(|(c, p)| format!("{}*[{}]", format_rational(c), q.path_ids(p).join(" ")))
        .collect();
    terms.join(" + ")
}

fn load_point(args: &PointArgs, source: &Source) -> Outcome<Option<RepresentationPoint>> {
    let q = source.quiver();
    let p = if let Some(path) = &args.point {
        point_from_json(q, &read(path)?)?
    } else if let Some(taut) = &args.taut {
        let entry = source.entry("--taut")?;
        let cox = taut
            .split(':')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        let fiber = args.fiber.as_deref().map(parse_rational).transpose()?;
        entry.tautological_point(&cox, fiber.as_ref())?
    } else {
        return Ok(None);
    };
    if let Some(r) = p.first_violated_relation(q) {
        let what = format!("point violates relation {}", describe_relation(q, r));
        if args.strict {
            return Err(Failure::Domain(what));
        }
        eprintln!("warning: {what}; continuing outside the representation variety");
    }
    Ok(Some(p))
}

fn require_point(args: &PointArgs, source: &Source) -> Outcome<RepresentationPoint> {
    load_point(args, source)?
        .ok_or_else(|| Failure::Input("a point is required (--point FILE or --taut COORDS)".into()))
}

fn load_character(args: &CharacterArgs, n: usize) -> Outcome<Character> {
    let values: Vec<i64> = if let Some(text) = &args.chi {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Failure::Input(format!("bad character entry `{s}`")))
            })
            .collect::<Outcome<_>>()?
    } else {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct ChiFile {
            chi: Vec<i64>,
        }
        let path = args.chi_file.as_ref().expect("clap requires a character");
        let file: ChiFile = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        file.chi
    };
    if values.len() != n {
        return Err(Failure::Domain(format!(
            "character has {} entries, quiver has {n} nodes",
            values.len()
        )));
    }
    Ok(Character::new(values)?)
}

/// `VALUE@I,J` entries, e.g. `1@1,4`.
fn parse_weight_entry(text: &str) -> Outcome<(u64, usize, usize)> {
    let bad = || Failure::Input(format!("bad weight entry `{text}`, expected VALUE@I,J"));
    let (value, pos) = text.split_once('@').ok_or_else(bad)?;
    let (i, j) = pos.split_once(',').ok_or_else(bad)?;
    Ok((
        value.trim().parse().map_err(|_| bad())?,
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

fn load_weights(args: &WeightArgs, n: usize) -> Outcome<WeightMatrix> {
    let m = if let Some(path) = &args.m_file {
        weights_from_json(&read(path)?)?
    } else {
        let entries = args
            .m
            .iter()
            .flat_map(|s| s.split_whitespace())
            .map(parse_weight_entry)
            .collect::<Outcome<Vec<_>>>()?;
        WeightMatrix::from_entries(n, &entries)?
    };
    if m.n() != n {
        return Err(Failure::Domain(format!(
            "weight matrix is {0}x{0}, quiver has {n} nodes",
            m.n()
        )));
    }
    Ok(m)
}

fn set_text(nodes: &[usize]) -> String {
    let parts: Vec<String> = nodes.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn run(cmd: &Command, catalog_dir: Option<&PathBuf>) -> Outcome<Report> {
    match cmd {
        Command::Check { source, point, chi } => {
            let source = load_source(source, catalog_dir)?;
            let q = source.quiver();
            let p = require_point(point, &source)?;
            let chi = load_character(chi, q.n())?;
            check(q, &p, &chi)
        }
        Command::Certify { source, weights } => {
            let source = load_source(source, catalog_dir)?;
            let q = source.quiver();
            certify(q, &load_weights(weights, q.n())?)
        }
        Command::Character {
            source,
            weights,
            anticanonical,
        } => {
            let source = load_source(source, catalog_dir)?;
            let q = source.quiver();
            character(q, &load_weights(weights, q.n())?, *anticanonical)
        }
        Command::Supports { source, point } => {
            let source = load_source(source, catalog_dir)?;
            let q = source.quiver();
            let fam = subrep_supports(q, &require_point(point, &source)?)?;
            let sets = fam.to_vecs();
            let text: Vec<String> = sets.iter().map(|s| set_text(s)).collect();
            Ok(Report::new(
                format!("{} supports\n{}", sets.len(), text.join("\n")),
                json!({ "supports": sets }),
            ))
        }
        Command::Cone { source, point } => {
            let source = load_source(source, catalog_dir)?;
            let q = source.quiver();
            let fam = subrep_supports(q, &require_point(point, &source)?)?;
            let cone = stability_cone(&fam);
            let text: Vec<String> = cone.iter().map(ToString::to_string).collect();
            Ok(Report::new(
                text.join("\n"),
                json!({ "constraints": to_json(&cone) }),
            ))
        }
        Command::Cycles {
            source,
            point,
            max_len,
        } => {
            let source = load_source(source, catalog_dir)?;
            let p = load_point(point, &source)?;
            cycles(
                source.quiver(),
                p.as_ref(),
                max_len.unwrap_or(2 * source.quiver().n()),
            )
        }
        Command::Separate {
            source,
            samples,
            max_len,
            seed,
        } => {
            let source = load_source(source, catalog_dir)?;
            let entry = source.entry("separate")?;
            let max_len = max_len.unwrap_or(2 * entry.quiver().n());
            let report = separation_experiment(entry, *samples, max_len, *seed)?;
            let mut text = format!(
                "{} cycles up to length {max_len}\nseparated {}/{} pairs (fraction {:.3})",
                report.cycles,
                report.separated,
                report.pairs,
                report.fraction()
            );
            for c in &report.collisions {
                text.push_str(&format!(
                    "\ncollision: [{}] fiber {} vs [{}] fiber {}",
                    c.first.cox.join(":"),
                    c.first.fiber.as_deref().unwrap_or("-"),
                    c.second.cox.join(":"),
                    c.second.fiber.as_deref().unwrap_or("-"),
                ));
            }
            let mut json = to_json(&report);
            json["max_len"] = json!(max_len);
            json["seed"] = json!(seed);
            json["fraction"] = json!(report.fraction());
            Ok(Report::new(text, json))
        }
        Command::Extend {
            source,
            added_dim,
            labels,
        } => {
            let source = load_source(source, catalog_dir)?;
            let q = source.quiver();
            let base = match &source {
                Source::Entry(e) if e.has_fiber() => e.base_quiver()?,
                _ => q.clone(),
            };
            let out = if labels.is_empty() {
                let k = added_dim
                    .ok_or_else(|| Failure::Input("extend needs --added-dim or --labels".into()))?;
                extend_spiral(&base, k)?
            } else {
                let labels = labels
                    .iter()
                    .map(|l| l.parse::<Monomial>())
                    .collect::<Result<Vec<_>, _>>()?;
                extend_spiral_labeled(&base, &labels)?
            };
            let text = quiver_to_json(&out);
            let json = serde_json::from_str(&text).expect("quiver JSON parses");
            Ok(Report::new(text, json))
        }
        Command::Catalog { name: None } => {
            let text = ENTRY_NAMES.join("\n");
            Ok(Report::new(text, json!({ "entries": ENTRY_NAMES })))
        }
        Command::Catalog { name: Some(name) } => {
            let entry = get_entry(name)?;
            let text = quiver_to_json(entry.quiver());
            let json = serde_json::from_str(&text).expect("quiver JSON parses");
            Ok(Report::new(text, json))
        }
    }
}

fn check(q: &Quiver, p: &RepresentationPoint, chi: &Character) -> Outcome<Report> {
    let fam = subrep_supports(q, p)?;
    let report = verdict_from_family(&fam, chi);
    let verdict = match (
        &report.semistable,
        &report.stable,
        &report.violating_support,
    ) {
        (_, true, _) => "stable".to_string(),
        (true, false, Some(s)) => {
            format!(
                "semistable, not stable: support {} has chi_S = 0",
                set_text(s)
            )
        }
        (false, _, Some(s)) => {
            let n = quiverstab::NodeSet::from_nodes(s.iter().copied());
            format!(
                "unstable: support {} has chi_S = {} > 0",
                set_text(s),
                chi.subset_sum(n)
            )
        }
        _ => unreachable!("non-stable verdicts carry a support"),
    };
    let text = format!(
        "{verdict}\ncharacter {chi}, {} subrepresentation supports",
        report.supports_count
    );
    Ok(Report::new(text, to_json(&report)))
}

fn certificate_json(c: &Certificate) -> serde_json::Value {
    match c {
        Certificate::Certified => json!({ "certified": true, "reason": null }),
        Certificate::Uncertified(why) => {
            json!({ "certified": false, "reason": uncertified_text(why) })
        }
    }
}

fn uncertified_text(why: &Uncertified) -> String {
    match why {
        Uncertified::NotGloballyGenerated { i, j } => {
            format!("m_{i}{j} > 0 but Hom(E_{i}, E_{j}) is not generated by global sections")
        }
        Uncertified::NotConnected { from, to } => {
            format!("no sequence of moves leads from node {from} to node {to}")
        }
    }
}

fn certify(q: &Quiver, m: &WeightMatrix) -> Outcome<Report> {
    let chi = character_from_weights(m);
    let good = certify_good(q, m)?;
    let great = certify_great(q, m)?;
    let graph = move_graph(q, m)?;
    let headline = if great.is_certified() {
        "great (global-generation and strong-connectivity certificate)"
    } else if good.is_certified() {
        "good (global-generation certificate); great not certified"
    } else {
        "not certified good or great by the weight criteria (this does not rule either out)"
    };
    let mut text = format!("{headline}\ncharacter {chi}\n");
    let trail = |label: &str, c: &Certificate, ok: &str| match c {
        Certificate::Certified => format!("{label}: certified, {ok}\n"),
        Certificate::Uncertified(why) => {
            format!("{label}: not certified, {}\n", uncertified_text(why))
        }
    };
    text += &trail(
        "good",
        &good,
        "every weighted Hom space is globally generated",
    );
    text += &trail("great", &great, "the move graph is strongly connected");
    let moves: Vec<String> = graph
        .iter()
        .enumerate()
        .skip(1)
        .map(|(v, out)| {
            let t: Vec<String> = out.iter().map(usize::to_string).collect();
            format!("  {v} -> {}", t.join(","))
        })
        .collect();
    text += &format!("move graph\n{}", moves.join("\n"));
    let verdict = if great.is_certified() {
        "great"
    } else if good.is_certified() {
        "good"
    } else {
        "uncertified"
    };
    let json = json!({
        "verdict": verdict,
        "character": chi.values(),
        "good": certificate_json(&good),
        "great": certificate_json(&great),
        "move_graph": graph.into_iter().skip(1).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json))
}

fn character(q: &Quiver, m: &WeightMatrix, anticanonical: bool) -> Outcome<Report> {
    let chi = if anticanonical {
        anticanonical_character(m)
    } else {
        character_from_weights(m)
    };
    let mut text = format!("character {chi}\n");
    let mut json = json!({ "character": chi.values(), "anticanonical": anticanonical });
    if let Some(pic) = q.pic() {
        let degree = e_chi_degree(&chi, pic)?;
        text += &format!("E_chi degree {degree}\n");
        json["e_chi_degree"] = to_json(&degree);
    }
    if anticanonical && q.canonical().is_some() {
        let d = check_line_bundle_degrees(q, m)?;
        text += &format!(
            "degree-level check: {} (weights give {}, Hom(E_n, E_1 (x) K^-1) has {})\n",
            if d.consistent {
                "consistent"
            } else {
                "inconsistent"
            },
            d.weights_degree,
            d.wrap_degree
        );
        json["degree_check"] = to_json(&d);
    }
    Ok(Report::new(text, json))
}

fn cycles(q: &Quiver, p: Option<&RepresentationPoint>, max_len: usize) -> Outcome<Report> {
    let cycles = enumerate_cycles(q, max_len)?;
    let mut rows = Vec::with_capacity(cycles.len());
    let mut text = format!("{} cycles up to length {max_len}\n", cycles.len());
    for c in &cycles {
        let ids = c.ids(q);
        let label = c.label(q).ok().map(|l| l.to_string());
        let value = p
            .map(|p| evaluate_invariant(c, p))
            .transpose()?
            .map(|v| format_rational(&v));
        text += &format!(
            "{}{}{}\n",
            ids.join(" "),
            label
                .as_ref()
                .map_or(String::new(), |l| format!("  label {l}")),
            value
                .as_ref()
                .map_or(String::new(), |v| format!("  value {v}")),
        );
        rows.push(json!({ "base": c.base(), "arrows": ids, "label": label, "value": value }));
    }
    Ok(Report::new(
        text,
        json!({ "max_len": max_len, "cycles": rows }),
    ))
}
