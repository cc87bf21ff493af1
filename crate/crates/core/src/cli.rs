//! The `toric-gtc` command line: one verb per library operation, JSON in and
//! out.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::assembly::{abelian_quotient, assemble, assemble_datum, chart, QuotientReport, SchemeDescription, Side};
use crate::duality::{datum_isomorphism, mirror, single_field_mutations, validate_duality, DualityDatum};
use crate::fan::{gtc_fan_from_cone, spec_fan, validate_gtc, GtcFan};
use crate::generators::{
    abelian_datum, batyrev_datum, batyrev_dual, batyrev_mirror_map, check_translation_invariance, count_triangle_types, tetragon_data,
    triangle_type_values,
};
use crate::json::{
    canonical, mat_out, polytope_in, polytope_out, vec_out, ChartJson, DatumJson, FunctionJson, GtcFanJson, JMat, MonoidJson, SchemeJson,
};
use crate::polygon;
use crate::polytope::{polar, LatticePolytope};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "toric-gtc", version, about = "Toric monoids, gtc fans, duality data and mirrors")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub report: bool,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// The periodic function with `Λ′ = 2Z²`, `q = x² − xy + y²`.
    Hexagonal,
    /// The square with vertices `±e₁, ±e₂`.
    CrossPolytope,
    /// The cone over the triangle `(0,0), (1,0), (2,3)` at height one.
    #[value(name = "triangle-231")]
    Triangle231,
}

impl Example {
    fn text(self) -> &'static str {
        match self {
            Example::Hexagonal => include_str!("../data/hexagonal.json"),
            Example::CrossPolytope => include_str!("../data/cross-polytope.json"),
            Example::Triangle231 => include_str!("../data/triangle-231.json"),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// JSON file, `-` for standard input, or inline JSON.
    pub input: Option<String>,
    #[arg(long)]
    pub example: Option<Example>,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Polar dual of a lattice polytope.
    Polar(Input),
    /// Reflexive polygons with vertices in `[-bound, bound]²`, up to
    /// unimodular equivalence.
    Reflexive {
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Also build each Batyrev datum and check the mirror against the polar.
        #[arg(long)]
        check: bool,
    },
    /// Batyrev duality datum of a reflexive polytope.
    Batyrev(Input),
    /// Mirror of a duality datum.
    Mirror(Input),
    /// Components and gluing of the space of a gtc fan or duality datum.
    Assemble(Input),
    /// Affine charts at the generic points of a duality datum.
    Chart {
        #[command(flatten)]
        input: Input,
        /// Label of a generic point; all generic points when omitted.
        #[arg(long)]
        point: Option<String>,
    },
    /// Components modulo the period lattice for a periodic convex function.
    Abelian {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        margin: i64,
    },
    /// Lattice triangle types `(a, b)` for odd `b`.
    ClassifyTriple {
        #[arg(long)]
        b: u64,
    },
    /// Cone over the tetragon `(0,0), (1,0), (a,b), (c,d)`.
    Tetragon {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
    },
    /// Validate a gtc fan or duality datum.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also check that this many single-field perturbations are flagged;
        /// 0 means all of them.
        #[arg(long)]
        mutate: Option<usize>,
    },
    /// The fan `Spec P` of a toric monoid.
    SpecFan(Input),
}

/// Exit code with the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

type Run<T> = std::result::Result<T, Failure>;

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Validation(_)
            | Error::NotReflexive
            | Error::NotGorenstein
            | Error::NotSharp
            | Error::NotFullDimensional
            | Error::NotPointed
            | Error::OriginNotInterior => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parsed input, classified by shape.
enum Object {
    Polytope(LatticePolytope),
    Monoid(MonoidJson),
    Function(FunctionJson),
    Fan(GtcFanJson),
    Datum(DatumJson),
}

fn typed<T: DeserializeOwned>(v: Value) -> Run<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        malformed(format!("at {}: {}", if path.is_empty() { "." } else { &path }, e.inner()))
    })
}

fn read_input(i: &Input) -> Run<Object> {
    let text = match (&i.example, &i.input) {
        (Some(e), _) => e.text().to_string(),
        (None, Some(s)) if s == "-" => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| malformed(format!("standard input: {e}")))?;
            buf
        }
        (None, Some(s)) if s.trim_start().starts_with(['{', '[']) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| malformed(format!("{path}: {e}")))?,
        (None, None) => return Err(malformed("no input: give a path, `-`, inline JSON or --example")),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| malformed(format!("at .: {e}")))?;
    match &v {
        Value::Array(_) => {
            let m: JMat = typed(v)?;
            Ok(Object::Polytope(polytope_in(&m)?))
        }
        Value::Object(o) if o.contains_key("f_side") => Ok(Object::Datum(typed(v)?)),
        Value::Object(o) if o.contains_key("points") => Ok(Object::Fan(typed(v)?)),
        Value::Object(o) if o.contains_key("A") => Ok(Object::Function(typed(v)?)),
        Value::Object(o) if o.contains_key("rays") => Ok(Object::Monoid(typed(v)?)),
        _ => Err(malformed("at .: expected a vertex list, monoid, periodic function, gtc fan or duality datum")),
    }
}

fn datum_of(o: Object) -> Run<DualityDatum> {
    match o {
        Object::Datum(d) => Ok(d.to_datum()?),
        Object::Polytope(p) => Ok(batyrev_datum(&p)?.datum),
        Object::Function(f) => Ok(abelian_datum(&f.to_function()?, 2)?.datum),
        _ => Err(malformed("at .: expected a duality datum, a reflexive polytope or a periodic function")),
    }
}

enum Space {
    Fan(Box<GtcFan>),
    Datum(Box<DualityDatum>),
}

fn space_of(o: Object) -> Run<Space> {
    match o {
        Object::Fan(g) => Ok(Space::Fan(Box::new(g.to_fan()?))),
        Object::Monoid(m) => Ok(Space::Fan(Box::new(gtc_fan_from_cone(&m.to_monoid()?.cone())?))),
        other => Ok(Space::Datum(Box::new(datum_of(other)?))),
    }
}

fn polytope_of(o: Object) -> Run<LatticePolytope> {
    match o {
        Object::Polytope(p) => Ok(p),
        _ => Err(malformed("at .: expected a vertex list")),
    }
}

fn monoid_of(o: Object) -> Run<MonoidJson> {
    match o {
        Object::Monoid(m) => Ok(m),
        _ => Err(malformed("at .: expected a monoid {\"rank\", \"rays\"}")),
    }
}

/// JSON or a human summary, depending on `--report`.
enum Output {
    Json(Value),
    Both(Value, String),
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn scheme_summary(s: &SchemeDescription, g: &GtcFan) -> String {
    let mut out = String::new();
    for c in &s.components {
        let corners = c.polytope.planar_vertices.len();
        let label = c.label.name().map_or_else(|| format!("{:?}", c.label), str::to_string);
        let a: Vec<String> = match &c.label {
            crate::assembly::SurfaceLabel::Polygon { a_types, .. } => a_types.iter().map(|n| format!("A{n}")).collect(),
            _ => Vec::new(),
        };
        let _ = write!(out, "{}: {label}, {corners}-gon", g.label(c.point));
        if !a.is_empty() {
            let _ = write!(out, ", singular points {}", a.join(" "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{} components, {} gluing relations, {} charts", s.components.len(), s.gluing.len(), s.charts.len());
    out
}

fn quotient_json(r: &QuotientReport, g: &GtcFan) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "point": g.label(c.point),
                "label": c.label.name(),
                "corners": c.corners,
                "singular_locus_cycle": c.locus.cycle,
                "glued": c.locus.glued.len(),
            })
        })
        .collect();
    json!({ "components": components, "orbit_graph": r.orbit_graph, "orbit_cycle": r.orbit_cycle })
}

fn quotient_summary(name: &str, r: &QuotientReport) -> String {
    let mut out = format!("{name}: {} components\n", r.components.len());
    for c in &r.components {
        let label = c.label.name().map_or_else(|| format!("{:?}", c.label), str::to_string);
        let locus = match c.locus.cycle {
            Some(n) => format!("singular locus a {n}-gon"),
            None => format!("{} glued faces", c.locus.glued.len()),
        };
        let _ = writeln!(out, "  {label} ({}-gon), {locus}", c.corners);
    }
    out
}

fn execute(cli: &Cli) -> Run<Output> {
    match &cli.verb {
        Verb::Polar(i) => {
            let p = polytope_of(read_input(i)?)?;
            let dual = polar(&p)?;
            let vertices: Vec<Vec<String>> = dual.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            let v = json!({ "polar": vertices, "reflexive": dual.is_integral() && crate::polytope::is_reflexive(&p) });
            Ok(Output::Json(v))
        }
        Verb::Reflexive { bound, check } => {
            let classes = polygon::classes(&polygon::one_point_polygons(*bound));
            let mut forms: Vec<Vec<polygon::Pt>> = classes.iter().map(|h| centred(&polygon::normal_form(h))).collect();
            forms.sort();
            let polys: Vec<Value> = forms.iter().map(|f| to_value(&polytope_out(&lattice(f)))).collect();
            let mut v = json!({ "count": forms.len(), "polygons": polys });
            if *check {
                let passed = forms.par_iter().filter(|f| batyrev_mirror_holds(&lattice(f))).count();
                v["mirror_checked"] = json!(passed);
            }
            let mut text = format!("{} reflexive polygons up to equivalence\n", forms.len());
            for f in &forms {
                let _ = writeln!(
                    text,
                    "  {} vertices, {} boundary points: {:?}",
                    f.len(),
                    polygon::lattice_points(&polygon::convex_hull(f)).len() - 1,
                    f
                );
            }
            if let Some(n) = v.get("mirror_checked") {
                let _ = writeln!(text, "mirror ≅ Batyrev datum of the polar for {n} of {}", forms.len());
            }
            Ok(Output::Both(v, text))
        }
        Verb::Batyrev(i) => {
            let b = batyrev_datum(&polytope_of(read_input(i)?)?)?;
            Ok(Output::Json(to_value(&DatumJson::from_datum(&b.datum)?)))
        }
        Verb::Mirror(i) => {
            let d = datum_of(read_input(i)?)?;
            Ok(Output::Json(to_value(&DatumJson::from_datum(&mirror(&d)?)?)))
        }
        Verb::Assemble(i) => {
            let (s, g) = match space_of(read_input(i)?)? {
                Space::Fan(g) => (assemble(&g)?, *g),
                Space::Datum(d) => (assemble_datum(&d)?, d.f_side.clone()),
            };
            let v = to_value(&SchemeJson::from_scheme(&s, &g)?);
            Ok(Output::Both(v, scheme_summary(&s, &g)))
        }
        Verb::Chart { input, point } => {
            let d = datum_of(read_input(input)?)?;
            let g = &d.f_side;
            let label = |x: usize| g.label(x).to_string();
            let points = match point {
                Some(p) => vec![g.base.point(p).ok_or_else(|| malformed(format!("at --point: unknown point {p}")))?],
                None => g.generic_points(),
            };
            let charts = points.into_iter().map(|y| Ok(ChartJson::from_chart(&chart(&d, y)?, &label)?)).collect::<Run<Vec<_>>>()?;
            let mut text = String::new();
            for c in &charts {
                let _ = writeln!(text, "{}: {} dual rays, ideal generated by {:?}", c.point, c.dual_rays.len(), c.ideal_products);
            }
            Ok(Output::Both(to_value(&charts), text))
        }
        Verb::Abelian { input, margin } => {
            let f = match read_input(input)? {
                Object::Function(f) => f.to_function()?,
                _ => return Err(malformed("at .: expected a periodic function {\"A\", \"b\", \"c\", \"lattice_prime\", \"r\"}")),
            };
            let a = abelian_datum(&f, *margin)?;
            let invariance = check_translation_invariance(&f, &a.cells);
            let valid = validate_duality(&a.datum);
            let fq = abelian_quotient(&a, Side::F)?;
            let qq = abelian_quotient(&a, Side::Q)?;
            let v = json!({
                "function": to_value(&FunctionJson::from_function(&f)),
                "margin": margin,
                "translation_invariant": invariance.passed(),
                "valid": valid.passed(),
                "f_side": quotient_json(&fq, &a.datum.f_side),
                "q_side": quotient_json(&qq, &a.datum.q_side),
            });
            let text = format!(
                "{}{}translation invariant: {}, duality datum valid: {}\n",
                quotient_summary("F side (components at vertices)", &fq),
                quotient_summary("Q side (components at maximal cells)", &qq),
                invariance.passed(),
                valid.passed()
            );
            if !invariance.passed() || !valid.passed() {
                return Err(Failure { code: 1, message: format!("{invariance}{valid}") });
            }
            Ok(Output::Both(v, text))
        }
        Verb::ClassifyTriple { b } => {
            let count = count_triangle_types(*b)?;
            let values = triangle_type_values(*b)?;
            let text = format!("b = {b}: {count} types, a ∈ {values:?}\n");
            Ok(Output::Both(json!({ "count": count, "values": values }), text))
        }
        Verb::Tetragon { a, b, c, d } => {
            let t = tetragon_data(*a, *b, *c, *d)?;
            let types: Vec<i64> = t.components.iter().map(|c| c.a_type).collect();
            let v = json!({
                "vertices": t.vertices.iter().map(vec_out).collect::<Vec<_>>(),
                "rho": t.rho.as_ref().map(vec_out),
                "r2": t.r2,
                "formula_types": t.formula_types,
                "component_types": types,
                "consistent": t.consistent(),
            });
            let text = format!("Gorenstein: {}, (R2): {}, A-types {:?} (formulas {:?})\n", t.rho.is_some(), t.r2, types, t.formula_types);
            Ok(Output::Both(v, text))
        }
        Verb::Validate { input, mutate } => {
            let (report, datum) = match space_of(read_input(input)?)? {
                Space::Fan(g) => (validate_gtc(&g), None),
                Space::Datum(d) => (validate_duality(&d), Some(*d)),
            };
            let mut v = to_value(&report);
            v["passed"] = json!(report.passed());
            let mut text = format!("{report}\n");
            let mut ok = report.passed();
            if let (Some(n), Some(d)) = (mutate, datum) {
                let mut all = single_field_mutations(&d);
                if *n > 0 && *n < all.len() {
                    all.shuffle(&mut ChaCha8Rng::seed_from_u64(cli.seed));
                    all.truncate(*n);
                }
                let missed: Vec<String> =
                    all.iter().filter(|(_, m)| m.as_ref().is_ok_and(|m| validate_duality(m).passed())).map(|(k, _)| k.clone()).collect();
                v["mutations"] = json!({ "tried": all.len(), "undetected": missed });
                let _ = writeln!(text, "{} of {} perturbations detected", all.len() - missed.len(), all.len());
                ok &= missed.is_empty();
            }
            if !ok {
                return Err(Failure { code: 1, message: canonical(&v) });
            }
            Ok(Output::Both(v, text))
        }
        Verb::SpecFan(i) => {
            let p = monoid_of(read_input(i)?)?.to_monoid()?;
            let fan = spec_fan(&p)?;
            let label = |x: usize| fan.label(x).to_string();
            let mut stalks = serde_json::Map::new();
            for (x, s) in fan.stalks.iter().enumerate() {
                stalks.insert(label(x), to_value(&MonoidJson::from_monoid(s.toric())?));
            }
            let mut order: Vec<(String, String)> = fan.poset.hasse().into_iter().map(|(x, y)| (label(x), label(y))).collect();
            order.sort();
            let generization: Vec<Value> =
                fan.generization.iter().map(|(&(x, y), m)| json!({ "x": label(x), "y": label(y), "map": mat_out(m) })).collect();
            let v = json!({ "points": fan.poset.labels(), "order": order, "stalks": stalks, "generization": generization });
            let text = format!("{} points, {} closed, {} generic\n", fan.len(), fan.closed_points().len(), fan.generic_points().len());
            Ok(Output::Both(v, text))
        }
    }
}

/// Translates a polygon with one interior lattice point to put it at the origin.
fn centred(form: &[polygon::Pt]) -> Vec<polygon::Pt> {
    let c = polygon::interior_points(form)[0];
    form.iter().map(|p| [p[0] - c[0], p[1] - c[1]]).collect()
}

fn lattice(form: &[polygon::Pt]) -> LatticePolytope {
    LatticePolytope::new(2, &polygon::to_vectors(form)).expect("nonempty polygon")
}

fn batyrev_mirror_holds(delta: &LatticePolytope) -> bool {
    let check = || -> crate::Result<()> {
        let b = batyrev_datum(delta)?;
        let d = batyrev_dual(&b)?;
        datum_isomorphism(&mirror(&b.datum)?, &d.datum, &batyrev_mirror_map(&b, &d)?)
    };
    check().is_ok()
}

/// Runs one command line (without writing files unless `--output` is set).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(malformed(format!("--jobs: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(out) => {
            let (value, text) = match out {
                Output::Json(v) => (v, None),
                Output::Both(v, t) => (v, Some(t)),
            };
            let body = match (cli.report, text) {
                (true, Some(t)) => t,
                _ => canonical(&value) + "\n",
            };
            match &cli.output {
                Some(path) => match std::fs::write(path, &body) {
                    Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("{}: {e}\n", path.display()) },
                },
                None => Outcome { code: 0, stdout: body, stderr: String::new() },
            }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}
