//! JSON documents: monoids, fans with groups, fans with monoids and lattice
//! homomorphisms between fans.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use semitoric::cone::Fan;
use semitoric::groups::{FanWithGroups, FanWithMonoids};
use semitoric::lattice::{IntMatrix, IntVec, LatticeHom, Sublattice};
use semitoric::monoid::{make_monoid, AffineMonoid};
use semitoric::Error;
use serde_json::{json, Map, Value};

use crate::json::{
    array, child, index, known_keys, lattice_value, object, required, schema, vector_value, vectors, vectors_value,
};

/// Why a document could not be loaded.
#[derive(Debug)]
pub enum LoadError {
    Io {
        path: String,
        message: String,
    },
    Parse {
        message: String,
    },
    Schema {
        pointer: String,
        message: String,
    },
    /// Well-formed data that is not a fan, a monoid, etc.
    Math(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io { path, message } => write!(f, "{path}: {message}"),
            LoadError::Parse { message } => write!(f, "invalid JSON: {message}"),
            LoadError::Schema { pointer, message } => write!(f, "{pointer}: {message}"),
            LoadError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Math(e)
    }
}

/// Aliases for cone keys, e.g. `"sigma1" -> "0,1"`.
pub type Names = BTreeMap<String, String>;

#[derive(Clone, Debug)]
pub struct GroupsDoc {
    pub data: FanWithGroups,
    pub names: Names,
}

#[derive(Clone, Debug)]
pub struct MonoidsDoc {
    pub data: FanWithMonoids,
    pub names: Names,
}

/// A map `N → N'` given by its matrix, with optional source and target.
#[derive(Clone, Debug)]
pub struct HomDoc {
    pub phi: LatticeHom,
    pub source: Option<Box<Document>>,
    pub target: Option<Box<Document>>,
}

#[derive(Clone, Debug)]
pub enum Document {
    Monoid(AffineMonoid),
    FanWithGroups(GroupsDoc),
    FanWithMonoids(MonoidsDoc),
    Hom(HomDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::FanWithGroups(_) => "fan_with_groups",
            Document::FanWithMonoids(_) => "fan_with_monoids",
            Document::Hom(_) => "hom",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Document::Monoid(s) => s.ambient_dim(),
            Document::FanWithGroups(x) => x.data.rank(),
            Document::FanWithMonoids(y) => y.data.rank(),
            Document::Hom(h) => h.phi.source_dim(),
        }
    }

    /// The canonical JSON form. Loading it gives back the same document.
    pub fn to_value(&self) -> Value {
        match self {
            Document::Monoid(s) => monoid_value(s),
            Document::FanWithGroups(x) => {
                let fan = x.data.fan();
                let groups: Map<String, Value> = (0..fan.len())
                    .map(|i| (fan.key(i), lattice_value(x.data.group(i))))
                    .collect();
                let mut v = fan_value(fan, "fan_with_groups", &x.names);
                v["groups"] = Value::Object(groups);
                v
            }
            Document::FanWithMonoids(y) => {
                let fan = y.data.fan();
                let monoids: Map<String, Value> = (0..fan.len())
                    .map(|i| (fan.key(i), vectors_value(y.data.monoid(i).generators())))
                    .collect();
                let mut v = fan_value(fan, "fan_with_monoids", &y.names);
                v["monoids"] = Value::Object(monoids);
                v
            }
            Document::Hom(h) => {
                let m = h.phi.matrix();
                let mut v = json!({
                    "kind": "hom",
                    "rank": h.phi.source_dim(),
                    "matrix": vectors_value(&m.row_vectors()),
                });
                if let Some(s) = &h.source {
                    v["source"] = s.to_value();
                }
                if let Some(t) = &h.target {
                    v["target"] = t.to_value();
                }
                v
            }
        }
    }
}

pub fn monoid_value(s: &AffineMonoid) -> Value {
    json!({
        "kind": "monoid",
        "rank": s.ambient_dim(),
        "generators": vectors_value(s.generators()),
    })
}

fn fan_value(fan: &Fan, kind: &str, names: &Names) -> Value {
    let cones: Vec<Value> = fan
        .maximal_cones()
        .iter()
        .map(|&i| Value::Array(fan.ray_indices(i).iter().map(|&r| json!(r)).collect()))
        .collect();
    let mut v = json!({
        "kind": kind,
        "rank": fan.ambient_dim(),
        "rays": Value::Array(fan.rays().iter().map(vector_value).collect()),
        "cones": cones,
    });
    if !names.is_empty() {
        v["names"] = Value::Object(names.iter().map(|(k, c)| (k.clone(), json!(c))).collect());
    }
    v
}

/// Reads a document from a file, or from stdin when `path` is `-`.
pub fn load_path(path: &str) -> Result<Document, LoadError> {
    let (text, base) = if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| LoadError::Io {
            path: path.into(),
            message: e.to_string(),
        })?;
        (s, None)
    } else {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
            path: path.into(),
            message: e.to_string(),
        })?;
        (text, Path::new(path).parent().map(Path::to_path_buf))
    };
    load_str(&text, base.as_deref())
}

/// Parses a document. Relative paths inside a hom are resolved against `base`.
pub fn load_str(text: &str, base: Option<&Path>) -> Result<Document, LoadError> {
    let v: Value = serde_json::from_str(text).map_err(|e| LoadError::Parse { message: e.to_string() })?;
    load_value(&v, "", base)
}

pub fn load_value(v: &Value, pointer: &str, base: Option<&Path>) -> Result<Document, LoadError> {
    let map = object(v, pointer)?;
    let kind = required(map, pointer, "kind")?
        .as_str()
        .ok_or_else(|| schema(&child(pointer, "kind"), "expected a string"))?;
    let rank_ptr = child(pointer, "rank");
    let d = index(required(map, pointer, "rank")?, &rank_ptr)?;
    if d == 0 {
        return Err(schema(&rank_ptr, "rank must be positive"));
    }
    match kind {
        "monoid" => {
            known_keys(map, pointer, &["kind", "rank", "generators"])?;
            let ptr = child(pointer, "generators");
            let gens = vectors(required(map, pointer, "generators")?, d, &ptr)?;
            Ok(Document::Monoid(make_monoid(&gens, d)?))
        }
        "fan_with_groups" => {
            known_keys(map, pointer, &["kind", "rank", "rays", "cones", "groups", "names"])?;
            let (fan, names) = load_fan(map, pointer, d)?;
            let mut assigned = Vec::new();
            if let Some(g) = map.get("groups") {
                let gptr = child(pointer, "groups");
                for (key, basis) in object(g, &gptr)? {
                    let kptr = child(&gptr, key);
                    let i = resolve(&fan, &names, key, &kptr)?;
                    assigned.push((i, Sublattice::span(&vectors(basis, d, &kptr)?, d)?));
                }
            }
            let data = FanWithGroups::with_defaults(fan, assigned)?;
            Ok(Document::FanWithGroups(GroupsDoc { data, names }))
        }
        "fan_with_monoids" => {
            known_keys(map, pointer, &["kind", "rank", "rays", "cones", "monoids", "names"])?;
            let (fan, names) = load_fan(map, pointer, d)?;
            let mptr = child(pointer, "monoids");
            let mut assigned = Vec::new();
            for (key, gens) in object(required(map, pointer, "monoids")?, &mptr)? {
                let kptr = child(&mptr, key);
                let i = resolve(&fan, &names, key, &kptr)?;
                assigned.push((i, make_monoid(&vectors(gens, d, &kptr)?, d)?));
            }
            for &s in fan.maximal_cones() {
                if !assigned.iter().any(|(i, _)| *i == s) {
                    return Err(schema(&child(&mptr, &fan.key(s)), "missing monoid of a maximal cone"));
                }
            }
            let data = FanWithMonoids::from_partial(fan, assigned)?;
            Ok(Document::FanWithMonoids(MonoidsDoc { data, names }))
        }
        "hom" => {
            known_keys(map, pointer, &["kind", "rank", "matrix", "source", "target"])?;
            let ptr = child(pointer, "matrix");
            let rows = vectors(required(map, pointer, "matrix")?, d, &ptr)?;
            if rows.is_empty() {
                return Err(schema(&ptr, "matrix needs at least one row"));
            }
            let phi = LatticeHom::new(IntMatrix::from_rows(d, &rows)?);
            let side = |name: &str, dim: usize| -> Result<Option<Box<Document>>, LoadError> {
                let Some(x) = map.get(name) else { return Ok(None) };
                let sptr = child(pointer, name);
                let doc = match x {
                    Value::String(p) => {
                        let path: PathBuf = match base {
                            Some(b) => b.join(p),
                            None => PathBuf::from(p),
                        };
                        load_path(&path.to_string_lossy())?
                    }
                    _ => load_value(x, &sptr, base)?,
                };
                check_side(&doc, dim, &sptr)?;
                Ok(Some(Box::new(doc)))
            };
            let source = side("source", phi.source_dim())?;
            let target = side("target", phi.target_dim())?;
            Ok(Document::Hom(HomDoc { phi, source, target }))
        }
        other => Err(schema(&child(pointer, "kind"), format!("unknown kind {other:?}"))),
    }
}

/// A side of a hom must be a fan or a monoid of the matching rank.
pub fn check_side(doc: &Document, dim: usize, pointer: &str) -> Result<(), LoadError> {
    if matches!(doc, Document::Hom(_)) {
        return Err(schema(pointer, "expected a fan or a monoid"));
    }
    if doc.rank() != dim {
        return Err(schema(
            &child(pointer, "rank"),
            format!("expected rank {dim}, found {}", doc.rank()),
        ));
    }
    Ok(())
}

fn load_fan(map: &Map<String, Value>, pointer: &str, d: usize) -> Result<(Fan, Names), LoadError> {
    let rptr = child(pointer, "rays");
    let rays: Vec<IntVec> = vectors(required(map, pointer, "rays")?, d, &rptr)?;
    let cptr = child(pointer, "cones");
    let mut cones = Vec::new();
    for (i, c) in array(required(map, pointer, "cones")?, &cptr)?.iter().enumerate() {
        let ptr = child(&cptr, &i.to_string());
        let idx: Vec<usize> = array(c, &ptr)?
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let p = child(&ptr, &j.to_string());
                let r = index(x, &p)?;
                if r >= rays.len() {
                    return Err(schema(&p, format!("ray index {r} out of range")));
                }
                Ok(r)
            })
            .collect::<Result<_, _>>()?;
        cones.push(idx);
    }
    let fan = Fan::from_ray_indices(d, rays, &cones)?;
    let mut names = Names::new();
    if let Some(n) = map.get("names") {
        let nptr = child(pointer, "names");
        for (alias, key) in object(n, &nptr)? {
            let aptr = child(&nptr, alias);
            if parse_key(alias).is_some() {
                return Err(schema(&aptr, "an alias cannot look like a cone key"));
            }
            let key = key.as_str().ok_or_else(|| schema(&aptr, "expected a cone key"))?;
            let i = resolve(&fan, &Names::new(), key, &aptr)?;
            names.insert(alias.clone(), fan.key(i));
        }
    }
    Ok((fan, names))
}

/// Ray indices of a canonical key: increasing, comma-separated, `""` for zero.
fn parse_key(key: &str) -> Option<Vec<usize>> {
    if key.is_empty() {
        return Some(Vec::new());
    }
    let idx: Vec<usize> = key.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    idx.windows(2).all(|w| w[0] < w[1]).then_some(idx)
}

/// Cone index for a canonical key or an alias.
pub fn resolve(fan: &Fan, names: &Names, key: &str, pointer: &str) -> Result<usize, LoadError> {
    let key = names.get(key).map(String::as_str).unwrap_or(key);
    let idx = parse_key(key).ok_or_else(|| schema(pointer, format!("{key:?} is not a cone key")))?;
    fan.find(&idx)
        .ok_or_else(|| schema(pointer, format!("no cone {{{key}}} in the fan")))
}
