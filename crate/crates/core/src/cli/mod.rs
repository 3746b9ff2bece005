//! Command-line front end. Every report renders as JSON or text, and some
//! also as Singular input.

pub mod examples;
pub mod input;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::conormal::{conormal_of_to, generic_position, relative_conormal_ideal, LegendrianCurve};
use crate::contact::{act_on_legendrian, equisingularity_preservation_test, verify_contact, ContactTransform};
use crate::curve::{
    classify, equisingular_equal, is_generic, newton_diagram, normalize_tangent, Branch, Classification, EquisingClass,
    Face, PlaneCurve, TangentChange,
};
use crate::deform::DeformationModel;
use crate::error::{Error, Result};
use crate::exactalg::parse::parse_poly;
use crate::exactalg::poly::MultiPoly;
use crate::series::{semigroup_of_subring, SemigroupData, TruncSeries};

pub const SCHEMA: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Singular,
}

#[derive(Debug, Parser)]
#[command(
    name = "legdef",
    version,
    about = "Contact geometry and equisingular deformations of plane curve singularities"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Working truncation for series (overrides LEGDEF_TRUNCATION).
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 20240601, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct CurveArgs {
    /// Equation f(x, y).
    #[arg(long)]
    pub equation: Option<String>,
    /// JSON list of branches, e.g. '[{"x":"t^3","y":"t^10"}]'.
    #[arg(long)]
    pub branches: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton diagram of an equation.
    Newton {
        #[arg(long)]
        equation: String,
    },
    /// SQH / NND / degenerate classification.
    Classify {
        #[arg(long)]
        equation: String,
    },
    /// Genericity test: ord y >= 2 ord x on every branch.
    Generic {
        #[command(flatten)]
        curve: CurveArgs,
        /// First move a single-line tangent cone to y = 0.
        #[arg(long)]
        normalize_tangent: bool,
    },
    /// Conormal of a plane curve, or with --space the relative conormal
    /// ideal of a hypersurface family.
    Conormal {
        #[command(flatten)]
        curve: CurveArgs,
        /// Comma-separated space variables of a hypersurface family.
        #[arg(long)]
        space: Option<String>,
        /// Comma-separated parameters of the family.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Value semigroups of the branches (or of their conormals).
    Semigroup {
        #[command(flatten)]
        curve: CurveArgs,
        /// Use the subring generated by x, y and p.
        #[arg(long)]
        conormal: bool,
    },
    /// Action of a contact transformation on the conormal of a curve.
    ContactAct {
        #[command(flatten)]
        curve: CurveArgs,
        /// JSON transform, e.g. '{"kind":"rho","lambda":"1"}'.
        #[arg(long)]
        transform: String,
    },
    /// Equisingularity class, optionally compared with a second curve.
    Equisingular {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        other_equation: Option<String>,
        #[arg(long)]
        other_branches: Option<String>,
    },
    /// Quotient bases I_f/I_f^mu (mu) or I_f/<f,(x,y)f_x,(x^2,y)f_y> (arrow).
    DeformBasis {
        #[arg(long)]
        equation: String,
        #[arg(long, value_enum, default_value = "mu")]
        kind: BasisKind,
    },
    /// Semiuniversal deformation G = f + sum s_i g_i.
    Semiuniversal {
        #[arg(long)]
        equation: String,
    },
    /// Golden examples.
    #[command(name = "paper-examples", alias = "examples")]
    Examples {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        id: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Mu,
    Arrow,
}

/// Exit status and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::Precondition(_) => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let stderr = if cli.format == Format::Json {
                format!("{}\n", json!({"schema": SCHEMA, "error": kind_name(&e), "message": e.to_string()}))
            } else {
                format!("error: {e}\n")
            };
            Outcome { code: exit_code(&e), stdout: String::new(), stderr }
        }
    }
}

fn kind_name(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Precondition(_) => "precondition",
        Error::Precision(_) => "precision",
        Error::Inconsistent(_) => "inconsistent",
        Error::Unsupported(_) => "unsupported",
    }
}

/// A report in all three renderings; `singular` is `None` when the command
/// has no Singular form.
struct Report {
    json: Map<String, Value>,
    text: String,
    singular: Option<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(SCHEMA));
        json.insert("command".into(), json!(command));
        Report { json, text: String::new(), singular: None }
    }

    fn set(&mut self, k: &str, v: Value) {
        self.json.insert(k.into(), v);
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn render(self, f: Format, command: &str) -> Result<String> {
        match f {
            Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&Value::Object(self.json)).unwrap())),
            Format::Text => Ok(self.text),
            Format::Singular => {
                self.singular.ok_or_else(|| Error::pre(format!("no Singular rendering for `{command}`")))
            }
        }
    }
}

fn face_json(f: &Face) -> Value {
    json!({"u": f.u, "v": f.v, "d": f.d, "start": [f.start.0, f.start.1], "end": [f.end.0, f.end.1]})
}

fn series_text(s: &TruncSeries) -> String {
    s.to_text("t")
}

fn semigroup_json(s: &SemigroupData) -> Value {
    json!({"generators": s.generators, "conductor": s.conductor, "gaps": s.gaps})
}

fn class_json(c: &EquisingClass) -> Value {
    json!({"char_exponents": c.char_exponents(), "intersections": c.intersections})
}

fn singular_ring(vars: &[String]) -> String {
    format!("ring r=0,({}),ds;", vars.join(","))
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let to = input::truncation(cli.truncation)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Newton { equation } => {
            let f = input::equation(equation)?;
            let nd = newton_diagram(&f)?;
            let mut r = Report::new("newton");
            r.set("equation", json!(f.to_text()));
            r.set("vertices", json!(nd.vertices.iter().map(|v| [v.0, v.1]).collect::<Vec<_>>()));
            r.set("faces", Value::Array(nd.faces.iter().map(face_json).collect()));
            r.set("convenient", json!(nd.is_convenient()));
            r.line(format!("f = {}", f.to_text()));
            for face in &nd.faces {
                r.line(format!("face {face}: {}*i + {}*j = {}", face.u, face.v, face.d));
            }
            r.text.push_str(&nd.ascii());
            Ok((0, r.render(fmt, "newton")?))
        }
        Command::Classify { equation } => {
            let f = input::equation(equation)?;
            let c = classify(&f)?;
            let mut r = Report::new("classify");
            r.set("equation", json!(f.to_text()));
            r.set("classification", json!(c.label()));
            r.set("nnd", json!(c.is_nnd()));
            if let Classification::Degenerate { face, reason } = &c {
                r.set("degenerate_face", face_json(face));
                r.set("reason", json!(reason));
            }
            r.line(c.label());
            Ok((0, r.render(fmt, "classify")?))
        }
        Command::Generic { curve, normalize_tangent: normalize } => {
            let mut change = TangentChange::Identity;
            let c = match (&curve.equation, *normalize) {
                (Some(e), true) => {
                    let (g, ch) = normalize_tangent(&input::equation(e)?)?;
                    change = ch;
                    if curve.branches.is_some() {
                        return Err(Error::pre("--normalize-tangent works on an equation only"));
                    }
                    PlaneCurve::from_equation(g)?
                }
                _ => input::curve(curve.equation.as_deref(), curve.branches.as_deref())?,
            };
            let g = is_generic(&c)?;
            let mut r = Report::new("generic");
            if let Some(f) = c.equation() {
                r.set("equation", json!(f.to_text()));
            }
            r.set("tangent_change", json!(change.describe()));
            r.set("generic", json!(g.generic));
            r.set("criterion_c", json!(g.criterion_c));
            r.set("criterion_d", json!(g.criterion_d));
            r.set("witness", json!(g.witness));
            r.line(format!("generic: {}", g.generic));
            if !g.witness.is_empty() {
                r.line(format!("witness: {}", g.witness));
            }
            Ok((0, r.render(fmt, "generic")?))
        }
        Command::Conormal { curve, space, params } => match space {
            Some(space) => {
                let eq = curve.equation.as_deref().ok_or_else(|| Error::Parse("--space needs --equation".into()))?;
                let space = input::name_list(space);
                let params = input::name_list(params);
                let f = parse_poly(eq)?;
                let k = relative_conormal_ideal(&f, &space, &params, None)?;
                let mut r = Report::new("conormal");
                r.set("equation", json!(k.equation.to_text()));
                r.set("ring", json!(k.ring_vars()));
                r.set("ideal", json!(k.generators().iter().map(|g| g.to_text()).collect::<Vec<_>>()));
                r.set("xi_homogeneous", json!(k.is_xi_homogeneous()));
                for g in k.generators() {
                    r.line(g.to_text());
                }
                r.singular = Some(k.to_singular());
                Ok((0, r.render(fmt, "conormal")?))
            }
            None => {
                let c = input::curve(curve.equation.as_deref(), curve.branches.as_deref())?;
                let l = conormal_of_to(&c, to)?;
                let pos = generic_position(&l);
                let mut r = Report::new("conormal");
                r.set("branches", legendrian_json(&l));
                r.set("generic_position", json!(pos.generic));
                r.set(
                    "positions",
                    Value::Array(
                        pos.branches
                            .iter()
                            .map(|b| {
                                json!({
                                    "ord_x": b.ord_x, "ord_y": b.ord_y, "ord_p": b.ord_p,
                                    "generic": b.generic, "strict": b.strict,
                                    "slope": b.slope.as_ref().map(crate::exactalg::rational::fmt_rational),
                                })
                            })
                            .collect(),
                    ),
                );
                legendrian_text(&mut r, &l);
                r.line(format!("generic position: {}", pos.generic));
                Ok((0, r.render(fmt, "conormal")?))
            }
        },
        Command::Semigroup { curve, conormal } => {
            let c = input::curve(curve.equation.as_deref(), curve.branches.as_deref())?;
            let mut r = Report::new("semigroup");
            let mut out = Vec::new();
            if *conormal {
                let l = conormal_of_to(&c, to)?;
                for (i, b) in l.branches().iter().enumerate() {
                    let s = semigroup_of_subring(&[b.x.clone(), b.y.clone(), b.p.clone()])?;
                    r.line(format!(
                        "branch {i}: generators {:?}, conductor {}, gaps {:?}",
                        s.generators, s.conductor, s.gaps
                    ));
                    out.push(semigroup_json(&s));
                }
            } else {
                for (i, b) in c.branches_or_compute(to)?.iter().enumerate() {
                    let s = semigroup_of_subring(&[b.x().clone(), b.y().clone()])?;
                    let mut v = semigroup_json(&s);
                    let ce = s.characteristic_exponents()?;
                    v["char_exponents"] = json!(ce);
                    r.line(format!(
                        "branch {i}: generators {:?}, conductor {}, exponents {:?}",
                        s.generators, s.conductor, ce
                    ));
                    out.push(v);
                }
            }
            r.set("conormal", json!(conormal));
            r.set("semigroups", Value::Array(out));
            Ok((0, r.render(fmt, "semigroup")?))
        }
        Command::ContactAct { curve, transform } => {
            let t = ContactTransform::parse(transform)?;
            let check = verify_contact(&t);
            if !check.is_contact {
                return Err(Error::pre(format!("not a contact transformation: {}", check.witness)));
            }
            let c = input::curve(curve.equation.as_deref(), curve.branches.as_deref())?;
            let l = conormal_of_to(&c, to)?;
            let image = act_on_legendrian(&t, &l)?;
            let mut r = Report::new("contact-act");
            r.set("transform", t.to_json());
            r.set("components", json!(t.components().iter().map(|p| p.to_text()).collect::<Vec<_>>()));
            r.set("cofactor", json!(check.cofactor.as_ref().map(|u| u.to_text())));
            r.set("image", legendrian_json(&image));
            r.line(format!("T = {t}"));
            legendrian_text(&mut r, &image);
            let plane: Vec<Branch> = image.branches().iter().map(|b| b.plane_branch()).collect::<Result<_>>()?;
            if plane.iter().all(|b| b.is_exact()) {
                let mut f = MultiPoly::one(&["x", "y"]);
                for b in &plane {
                    f = &f * &crate::contact::implicitize(b)?;
                }
                r.set("image_equation", json!(f.to_text()));
                r.line(format!("image equation: {}", f.to_text()));
            }
            let pres = equisingularity_preservation_test(&t, &c)?;
            r.set(
                "equisingularity",
                json!({
                    "preserved": pres.preserved,
                    "skip_reason": pres.skip_reason,
                    "before": pres.before.as_ref().map(class_json),
                    "after": pres.after.as_ref().map(class_json),
                }),
            );
            match (&pres.preserved, &pres.skip_reason) {
                (Some(p), _) => r.line(format!("equisingular: {p}")),
                (None, Some(why)) => r.line(format!("equisingularity test skipped: {why}")),
                _ => {}
            }
            Ok((0, r.render(fmt, "contact-act")?))
        }
        Command::Equisingular { curve, other_equation, other_branches } => {
            let c = input::curve(curve.equation.as_deref(), curve.branches.as_deref())?;
            let a = EquisingClass::of_branches(&c.branches_or_compute(to)?)?;
            let mut r = Report::new("equisingular");
            r.set("class", class_json(&a));
            r.line(format!("char exponents {:?}", a.char_exponents()));
            r.line(format!("intersections {:?}", a.intersections));
            if other_equation.is_some() || other_branches.is_some() {
                let d = input::curve(other_equation.as_deref(), other_branches.as_deref())?;
                let b = EquisingClass::of_branches(&d.branches_or_compute(to)?)?;
                let eq = equisingular_equal(&a, &b);
                r.set("other", class_json(&b));
                r.set("equisingular", json!(eq));
                r.line(format!("equisingular: {eq}"));
            }
            Ok((0, r.render(fmt, "equisingular")?))
        }
        Command::DeformBasis { equation, kind } => {
            let m = DeformationModel::new(&input::equation(equation)?)?;
            let q = match kind {
                BasisKind::Mu => m.quotient_basis()?.basis,
                BasisKind::Arrow => m.es_arrow_basis()?.representatives,
            };
            let mut r = Report::new("deform-basis");
            let name = if *kind == BasisKind::Mu { "mu" } else { "arrow" };
            r.set("kind", json!(name));
            r.set("dimension", json!(q.len()));
            r.set("basis", json!(q.iter().map(|p| p.to_text()).collect::<Vec<_>>()));
            r.set("jet_bound", json!(m.jet_bound()));
            r.set("conditions", json!(m.es_ideal()?.conditions()));
            r.set("l_max", json!(m.mu().l_max));
            r.set("h", json!(m.mu().hs.iter().map(|h| h.representative.to_text()).collect::<Vec<_>>()));
            r.line(format!("dimension {}", q.len()));
            for p in &q {
                r.line(p.to_text());
            }
            let mut s = singular_ring(&["x".into(), "y".into()]);
            s.push_str(&format!("\npoly f={};\n", m.equation().to_singular()));
            let mu: Vec<String> = m.mu().generators.iter().map(|g| g.to_singular()).collect();
            s.push_str(&format!("ideal Imu={};\n", mu.join(",")));
            let es: Vec<String> = m.es_ideal()?.generators.iter().map(|g| g.to_singular()).collect();
            s.push_str(&format!("ideal Ies={};\n", es.join(",")));
            let b: Vec<String> = q.iter().map(|g| g.to_singular()).collect();
            s.push_str(&format!("ideal B={};\n", if b.is_empty() { "0".to_string() } else { b.join(",") }));
            r.singular = Some(s);
            Ok((0, r.render(fmt, "deform-basis")?))
        }
        Command::Semiuniversal { equation } => {
            let m = DeformationModel::new(&input::equation(equation)?)?;
            let d = m.quotient_basis()?;
            let mut r = Report::new("semiuniversal");
            if let Value::Object(o) = d.to_json() {
                for (k, v) in o {
                    r.set(&k, v);
                }
            }
            r.set("equation", json!(d.base.to_text()));
            r.line(format!("G = {}", d.display()));
            let vars = d.equation.vars().to_vec();
            r.singular = Some(format!("{}\npoly G={};\n", singular_ring(&vars), d.equation.to_singular()));
            Ok((0, r.render(fmt, "semiuniversal")?))
        }
        Command::Examples { list, id } => {
            let items = examples::items();
            let selected: Vec<&examples::GoldenItem> = match id {
                Some(id) => {
                    let it = items
                        .iter()
                        .find(|i| i.id == id)
                        .ok_or_else(|| Error::Parse(format!("unknown example id `{id}`")))?;
                    vec![it]
                }
                None => items.iter().collect(),
            };
            let mut r = Report::new("paper-examples");
            if *list {
                r.set(
                    "items",
                    json!(selected
                        .iter()
                        .map(|i| json!({"id": i.id, "description": i.description}))
                        .collect::<Vec<_>>()),
                );
                for i in &selected {
                    r.line(format!("{:<24}{}", i.id, i.description));
                }
                return Ok((0, r.render(fmt, "paper-examples")?));
            }
            let mut results = Vec::new();
            let mut all = true;
            for i in &selected {
                let (pass, detail) = i.run(cli.seed);
                all &= pass;
                r.line(format!("{} {:<24}{}", if pass { "PASS" } else { "FAIL" }, i.id, detail));
                results.push(json!({"id": i.id, "pass": pass, "detail": detail}));
            }
            r.set("results", Value::Array(results));
            r.set("all_pass", json!(all));
            Ok((if all { 0 } else { 1 }, r.render(fmt, "paper-examples")?))
        }
    }
}

fn legendrian_json(l: &LegendrianCurve) -> Value {
    Value::Array(
        l.branches()
            .iter()
            .map(|b| json!({"x": series_text(&b.x), "y": series_text(&b.y), "p": series_text(&b.p)}))
            .collect(),
    )
}

fn legendrian_text(r: &mut Report, l: &LegendrianCurve) {
    for (i, b) in l.branches().iter().enumerate() {
        r.line(format!("branch {i}: x = {}, y = {}, p = {}", series_text(&b.x), series_text(&b.y), series_text(&b.p)));
    }
}
