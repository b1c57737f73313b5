//! Commands over loaded documents, their reports and exit codes.

use semitoric::cone::Fan;
use semitoric::groups::{
    check_hom_groups, check_hom_monoids, extract_groups, functor_f, seminormalize_fan, validate_groups,
    validate_monoids, FanWithMonoids, HomCertificate, Report,
};
use semitoric::monoid::{relation_lattice, saturation, seminormalize, semisaturation_witness, AffineMonoid};
use semitoric::Error;
use serde_json::{json, Map, Value};

use crate::document::{
    check_side, load_path, monoid_value, resolve, Document, GroupsDoc, HomDoc, LoadError, MonoidsDoc, Names,
};
use crate::json::{canonical, lattice_value, vector_value, vectors_value};
use crate::svg::{self, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Command {
    /// Check the defining conditions of a fan with groups or monoids.
    Validate,
    /// Monoids attached to a fan with groups.
    Functor,
    /// Groups recovered from a fan with monoids.
    ExtractGroups,
    /// Seminormalization of a monoid or of every monoid of a fan.
    Seminormalize,
    /// Whether every monoid is saturated.
    IsNormal,
    /// Whether every monoid is semisaturated.
    IsSeminormal,
    /// Whether a lattice map is a morphism of fans with groups or monoids.
    CheckHom,
    /// Generators and relation lattice.
    Presentation,
    /// SVG picture of a rank-2 monoid.
    PlotSvg,
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub cone: Option<String>,
    pub window: Window,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            cone: None,
            window: Window::square(4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    PredicateFalse,
    InvalidInput,
    ParseError,
    CertificationFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PredicateFalse => 1,
            Status::InvalidInput => 2,
            Status::ParseError => 3,
            Status::CertificationFailure => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Json(Value),
    Svg(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub status: Status,
    pub payload: Payload,
}

impl RunResult {
    fn json(status: Status, v: Value) -> Self {
        RunResult {
            status,
            payload: Payload::Json(v),
        }
    }

    fn verdict(ok: bool, v: Value) -> Self {
        RunResult::json(if ok { Status::Ok } else { Status::PredicateFalse }, v)
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// The bytes written to stdout or `--out`.
    pub fn render(&self) -> String {
        match &self.payload {
            Payload::Json(v) => canonical(v),
            Payload::Svg(s) => s.clone(),
        }
    }
}

/// Anything that stops a command before it produces its report.
#[derive(Debug)]
pub enum CliError {
    Load(LoadError),
    Math(Error),
    Usage { message: String, pointer: Option<String> },
    UnsupportedRank(usize),
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Math(e) => CliError::Math(e),
            e => CliError::Load(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage {
        message: message.into(),
        pointer: None,
    }
}

fn error_kind(e: &Error) -> (&'static str, Status) {
    let invalid = Status::InvalidInput;
    match e {
        Error::DimensionMismatch { .. } => ("dimension_mismatch", invalid),
        Error::DependentRays => ("dependent_rays", invalid),
        Error::ZeroRay => ("zero_ray", invalid),
        Error::NotInCone(_) => ("not_in_cone", invalid),
        Error::NotAFace => ("not_a_face", invalid),
        Error::NotAFan { .. } => ("not_a_fan", invalid),
        Error::DuplicateRay(_) => ("duplicate_ray", invalid),
        Error::ConeNotInFan(_) => ("cone_not_in_fan", invalid),
        Error::NotInSpan => ("not_in_span", invalid),
        Error::InvalidGroups(_) => ("invalid_groups", invalid),
        Error::InvalidMonoids(_) => ("invalid_monoids", invalid),
        Error::RevalidationFailure(_) => ("revalidation_failure", invalid),
        Error::CertificationFailure(_) => ("certification_failure", Status::CertificationFailure),
        Error::EnumerationLimit(_) => ("enumeration_limit", Status::CertificationFailure),
        Error::Overflow => ("overflow", Status::CertificationFailure),
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Load(_) | CliError::Usage { .. } => Status::ParseError,
            CliError::Math(e) => error_kind(e).1,
            CliError::UnsupportedRank(_) => Status::InvalidInput,
        }
    }

    /// `{"error": {"kind", "message", "pointer"?}}`.
    pub fn report(&self) -> Value {
        let (kind, message, pointer) = match self {
            CliError::Load(LoadError::Io { path, message }) => ("io", format!("{path}: {message}"), None),
            CliError::Load(LoadError::Parse { message }) => ("parse", message.clone(), None),
            CliError::Load(LoadError::Schema { pointer, message }) => ("schema", message.clone(), Some(pointer)),
            CliError::Load(LoadError::Math(e)) | CliError::Math(e) => (error_kind(e).0, e.to_string(), None),
            CliError::Usage { message, pointer } => ("usage", message.clone(), pointer.as_ref()),
            CliError::UnsupportedRank(d) => ("unsupported_rank", format!("pictures need rank 2, found {d}"), None),
        };
        let mut e = json!({ "kind": kind, "message": message });
        if let Some(p) = pointer {
            e["pointer"] = json!(p);
        }
        json!({ "error": e })
    }

    pub fn into_result(self) -> RunResult {
        RunResult::json(self.status(), self.report())
    }
}

/// Loads `files` and runs `cmd` on them.
pub fn execute(cmd: Command, files: &[String], flags: &Flags) -> RunResult {
    let docs: Result<Vec<Document>, LoadError> = files.iter().map(|f| load_path(f)).collect();
    match docs {
        Ok(docs) => run_command(cmd, &docs, flags),
        Err(e) => CliError::from(e).into_result(),
    }
}

pub fn run_command(cmd: Command, docs: &[Document], flags: &Flags) -> RunResult {
    dispatch(cmd, docs, flags).unwrap_or_else(CliError::into_result)
}

fn dispatch(cmd: Command, docs: &[Document], flags: &Flags) -> Result<RunResult, CliError> {
    let arity_ok = match cmd {
        Command::CheckHom => docs.len() == 1 || docs.len() == 3,
        _ => docs.len() == 1,
    };
    if !arity_ok {
        return Err(usage(format!("wrong number of input files: {}", docs.len())));
    }
    if flags.cone.is_some() && !matches!(cmd, Command::Functor | Command::PlotSvg) {
        return Err(usage("--cone only applies to functor and plot-svg"));
    }
    let doc = &docs[0];
    match cmd {
        Command::Validate => Ok(validate(doc)?),
        Command::Functor => functor(doc, flags),
        Command::ExtractGroups => extract(doc),
        Command::Seminormalize => seminormal(doc),
        Command::IsNormal => predicate(doc, "saturated", |s| {
            let sat = saturation(s)?;
            for g in sat.generators() {
                if !s.contains(g)? {
                    return Ok(Some(g.clone()));
                }
            }
            Ok(None)
        }),
        Command::IsSeminormal => predicate(doc, "semisaturated", semisaturation_witness),
        Command::CheckHom => check_hom(docs),
        Command::Presentation => presentation(doc),
        Command::PlotSvg => plot(doc, flags),
    }
}

/// The cone named by `--cone`.
fn cone_flag(fan: &Fan, names: &Names, key: &str) -> Result<usize, CliError> {
    resolve(fan, names, key, "").map_err(|e| match e {
        LoadError::Schema { message, .. } => usage(format!("--cone: {message}")),
        e => e.into(),
    })
}

fn wrong_kind(doc: &Document, expected: &str) -> CliError {
    CliError::Usage {
        message: format!("expected {expected}, found {}", doc.kind()),
        pointer: Some("/kind".into()),
    }
}

fn report_value(fan: &Fan, r: &Report) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            let mut v = json!({
                "condition": f.condition,
                "reason": f.reason.as_str(),
                "tau": fan.key(f.tau),
                "sigma": fan.key(f.sigma),
            });
            if let Some(w) = &f.witness {
                v["witness"] = vector_value(w);
            }
            v
        })
        .collect();
    json!({ "valid": r.passed(), "failures": failures })
}

fn validity(fan: &Fan, r: &Report) -> RunResult {
    let status = if r.passed() { Status::Ok } else { Status::InvalidInput };
    RunResult::json(status, report_value(fan, r))
}

fn validate(doc: &Document) -> Result<RunResult, Error> {
    Ok(match doc {
        Document::Monoid(_) => RunResult::json(Status::Ok, json!({ "valid": true, "failures": [] })),
        Document::FanWithGroups(x) => validity(x.data.fan(), &validate_groups(&x.data)),
        Document::FanWithMonoids(y) => validity(y.data.fan(), &validate_monoids(&y.data)?),
        Document::Hom(h) => {
            let mut out = json!({});
            let mut ok = true;
            for (name, side) in [("source", &h.source), ("target", &h.target)] {
                if let Some(d) = side {
                    let r = validate(d)?;
                    ok &= r.status == Status::Ok;
                    if let Payload::Json(v) = r.payload {
                        out[name] = v;
                    }
                }
            }
            out["valid"] = json!(ok);
            RunResult::json(if ok { Status::Ok } else { Status::InvalidInput }, out)
        }
    })
}

fn functor(doc: &Document, flags: &Flags) -> Result<RunResult, CliError> {
    let Document::FanWithGroups(x) = doc else {
        return Err(wrong_kind(doc, "fan_with_groups"));
    };
    let cone = flags
        .cone
        .as_ref()
        .map(|k| cone_flag(x.data.fan(), &x.names, k))
        .transpose()?;
    let r = validate_groups(&x.data);
    if !r.passed() {
        return Ok(validity(x.data.fan(), &r));
    }
    let y = functor_f(&x.data)?;
    Ok(RunResult::json(
        Status::Ok,
        match cone {
            Some(i) => json!({
                "cone": y.fan().key(i),
                "generators": vectors_value(y.monoid(i).generators()),
            }),
            None => Document::FanWithMonoids(MonoidsDoc {
                data: y,
                names: x.names.clone(),
            })
            .to_value(),
        },
    ))
}

fn as_monoid_fan(doc: &Document) -> Result<(FanWithMonoids, Names), CliError> {
    match doc {
        Document::Monoid(s) => Ok((FanWithMonoids::affine(s)?, Names::new())),
        Document::FanWithMonoids(y) => Ok((y.data.clone(), y.names.clone())),
        _ => Err(wrong_kind(doc, "monoid or fan_with_monoids")),
    }
}

fn extract(doc: &Document) -> Result<RunResult, CliError> {
    let (y, names) = as_monoid_fan(doc)?;
    let r = validate_monoids(&y)?;
    if !r.passed() {
        return Ok(validity(y.fan(), &r));
    }
    let x = extract_groups(&y)?;
    Ok(RunResult::json(
        Status::Ok,
        Document::FanWithGroups(GroupsDoc { data: x, names }).to_value(),
    ))
}

fn seminormal(doc: &Document) -> Result<RunResult, CliError> {
    let v = match doc {
        Document::Monoid(s) => monoid_value(&seminormalize(s)?.monoid),
        Document::FanWithMonoids(y) => Document::FanWithMonoids(MonoidsDoc {
            data: seminormalize_fan(&y.data)?.0,
            names: y.names.clone(),
        })
        .to_value(),
        _ => return Err(wrong_kind(doc, "monoid or fan_with_monoids")),
    };
    Ok(RunResult::json(Status::Ok, v))
}

/// A per-monoid predicate with a witness of failure. For fans the first
/// failing cone is reported.
fn predicate(
    doc: &Document,
    name: &str,
    witness: impl Fn(&AffineMonoid) -> Result<Option<semitoric::lattice::IntVec>, Error>,
) -> Result<RunResult, CliError> {
    let found = match doc {
        Document::Monoid(s) => witness(s)?.map(|w| (None, w)),
        Document::FanWithMonoids(y) => {
            let mut found = None;
            for i in 0..y.data.fan().len() {
                if let Some(w) = witness(y.data.monoid(i))? {
                    found = Some((Some(y.data.fan().key(i)), w));
                    break;
                }
            }
            found
        }
        _ => return Err(wrong_kind(doc, "monoid or fan_with_monoids")),
    };
    let mut v = Map::new();
    v.insert(name.into(), json!(found.is_none()));
    if let Some((cone, w)) = &found {
        if let Some(c) = cone {
            v.insert("cone".into(), json!(c));
        }
        v.insert("witness".into(), vector_value(w));
    }
    Ok(RunResult::verdict(found.is_none(), Value::Object(v)))
}

fn certificate_value(source: &Fan, target: &Fan, c: &HomCertificate) -> Value {
    let pairs = |ps: &[(usize, Option<usize>)]| -> Value {
        ps.iter()
            .map(|&(s, t)| json!({ "source": source.key(s), "target": t.map(|t| target.key(t)) }))
            .collect()
    };
    let mut v = json!({ "morphism": c.ok, "cones": pairs(&c.cones) });
    if let Some(f) = &c.fan {
        v["fan"] = json!({ "ok": f.ok, "images": pairs(&f.images) });
    }
    v
}

fn check_hom(docs: &[Document]) -> Result<RunResult, CliError> {
    let Document::Hom(h) = &docs[0] else {
        return Err(wrong_kind(&docs[0], "hom"));
    };
    let (source, target) = if docs.len() == 3 {
        check_side(&docs[1], h.phi.source_dim(), "/source")?;
        check_side(&docs[2], h.phi.target_dim(), "/target")?;
        (&docs[1], &docs[2])
    } else {
        match h {
            HomDoc {
                source: Some(s),
                target: Some(t),
                ..
            } => (s.as_ref(), t.as_ref()),
            _ => return Err(usage("the hom has no source or target; pass them as files")),
        }
    };
    let v = match (source, target) {
        (Document::FanWithGroups(x), Document::FanWithGroups(x2)) => {
            let c = check_hom_groups(&h.phi, &x.data, &x2.data)?;
            certificate_value(x.data.fan(), x2.data.fan(), &c)
        }
        (Document::FanWithGroups(_), _) | (_, Document::FanWithGroups(_)) => {
            return Err(usage("source and target must both carry groups or both carry monoids"))
        }
        _ => {
            let (y, _) = as_monoid_fan(source)?;
            let (y2, _) = as_monoid_fan(target)?;
            let c = check_hom_monoids(&h.phi, &y, &y2)?;
            certificate_value(y.fan(), y2.fan(), &c)
        }
    };
    let ok = v["morphism"] == json!(true);
    Ok(RunResult::verdict(ok, v))
}

fn presentation_value(s: &AffineMonoid) -> Value {
    json!({
        "generators": vectors_value(s.generators()),
        "relations": lattice_value(&relation_lattice(s)),
    })
}

fn presentation(doc: &Document) -> Result<RunResult, CliError> {
    let v = match doc {
        Document::Monoid(s) => presentation_value(s),
        Document::FanWithMonoids(y) => {
            let fan = y.data.fan();
            let cones: Map<String, Value> = (0..fan.len())
                .map(|i| (fan.key(i), presentation_value(y.data.monoid(i))))
                .collect();
            json!({ "cones": cones })
        }
        _ => return Err(wrong_kind(doc, "monoid or fan_with_monoids")),
    };
    Ok(RunResult::json(Status::Ok, v))
}

fn plot(doc: &Document, flags: &Flags) -> Result<RunResult, CliError> {
    if doc.rank() != 2 {
        return Err(CliError::UnsupportedRank(doc.rank()));
    }
    let monoid = match (doc, &flags.cone) {
        (Document::Monoid(s), None) => s.clone(),
        (Document::FanWithMonoids(y), Some(k)) => {
            let i = cone_flag(y.data.fan(), &y.names, k)?;
            y.data.monoid(i).clone()
        }
        (Document::FanWithGroups(x), Some(k)) => {
            let i = cone_flag(x.data.fan(), &x.names, k)?;
            functor_f(&x.data)?.monoid(i).clone()
        }
        (Document::Monoid(_), Some(_)) => return Err(usage("--cone needs a fan document")),
        (Document::Hom(_), _) => return Err(wrong_kind(doc, "monoid or fan")),
        (_, None) => return Err(usage("pictures of fans need --cone")),
    };
    Ok(RunResult {
        status: Status::Ok,
        payload: Payload::Svg(svg::plot(&monoid, &flags.window)?),
    })
}
