//! Scenario files: JSON documents declaring towers, extensions, surfaces,
//! points and assumed class facts, followed by a list of commands.

use serde::Deserialize;
use sextic_core::curveconfig::D6;
use sextic_core::fieldtower::{ClassFact, ExtensionDescriptor, GType, GaloisTower, Verdict};
use sextic_core::points::{construct_2point, construct_3point, ClosedPointSpec};
use sextic_core::surface::{make_surface, SurfaceSpec};
use sextic_core::Error;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub towers: Vec<TowerDecl>,
    #[serde(default)]
    pub extensions: Vec<ExtensionDecl>,
    #[serde(default)]
    pub surfaces: Vec<SurfaceDecl>,
    #[serde(default)]
    pub assumed: Vec<FactDecl>,
    #[serde(default)]
    pub points: Vec<PointDecl>,
    #[serde(default)]
    pub commands: Vec<String>,
}

/// A standard tower by group type, or explicit generator images.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDecl {
    pub name: String,
    #[serde(default)]
    pub standard: Option<String>,
    #[serde(default)]
    pub gtype: Option<String>,
    #[serde(default)]
    pub vars: Vec<String>,
    /// Generator letter to variable images, e.g. `{"g": {"x1": "x2"}}`.
    #[serde(default)]
    pub generators: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDecl {
    pub name: String,
    pub tower: String,
    /// One of "subfield", "quadratic", "kummer-cubic", "kummer-sextic".
    pub kind: String,
    #[serde(default)]
    pub fixing: Vec<String>,
    #[serde(default)]
    pub radicand: Option<String>,
    #[serde(default)]
    pub disc: Option<String>,
    #[serde(default)]
    pub beta: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDecl {
    pub name: String,
    pub tower: String,
    pub xi: String,
    #[serde(default)]
    pub rho: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactDecl {
    pub tower: String,
    pub subject: String,
    pub generator: String,
    pub verdict: String,
}

/// A point given by its splitting field and λ, built by the existence
/// constructions, or (degree 4) only declared.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDecl {
    pub name: String,
    pub surface: String,
    #[serde(default)]
    pub degree: Option<u32>,
    #[serde(default)]
    pub extension: Option<String>,
    #[serde(default)]
    pub lambda: Vec<String>,
    /// "2point" or "3point".
    #[serde(default)]
    pub construct: Option<String>,
    #[serde(default)]
    pub choice: usize,
    #[serde(default)]
    pub general: Option<bool>,
}

/// Failure while loading a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    /// The file is not a well-formed scenario; exit code 2.
    Parse(String),
    /// The scenario is well-formed but inconsistent; exit code 3.
    Semantic(String),
}

impl LoadError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Parse(_) => 2,
            LoadError::Semantic(_) => 3,
        }
    }

    fn from_core(what: &str, e: Error) -> LoadError {
        match e {
            Error::Parse(m) => LoadError::Parse(format!("{}: {}", what, m)),
            e => LoadError::Semantic(format!("{}: {}", what, e)),
        }
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(m) => write!(f, "parse error: {}", m),
            LoadError::Semantic(m) => write!(f, "semantic error: {}", m),
        }
    }
}

/// A loaded scenario. Maps are ordered so reports are deterministic.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub towers: BTreeMap<String, GaloisTower>,
    pub extensions: BTreeMap<String, (String, ExtensionDescriptor)>,
    pub surfaces: BTreeMap<String, SurfaceSpec>,
    /// Tower name of each surface.
    pub surface_towers: BTreeMap<String, String>,
    /// Points in declaration order, each with the name of its surface.
    pub points: Vec<(String, ClosedPointSpec)>,
    /// Assumed facts by tower name.
    pub assumed: BTreeMap<String, Vec<ClassFact>>,
    /// Assumed facts that strict mode kept out of the surfaces.
    pub ignored_facts: Vec<String>,
    pub commands: Vec<String>,
}

impl Scenario {
    pub fn points_on(&self, surface: &str) -> Vec<ClosedPointSpec> {
        self.points.iter().filter(|(s, _)| s == surface).map(|(_, p)| p.clone()).collect()
    }

    pub fn point(&self, surface: &str, name: &str) -> Option<&ClosedPointSpec> {
        self.points.iter().find(|(s, p)| s == surface && p.name == name).map(|(_, p)| p)
    }
}

fn d6_of_letter(c: char) -> Option<D6> {
    match c {
        'g' => Some(D6::theta()),
        'h' => Some(D6::iota()),
        'f' => Some(D6::sigma()),
        _ => None,
    }
}

fn parse_gtype(s: &str) -> Result<GType, LoadError> {
    GType::parse(s).ok_or_else(|| LoadError::Parse(format!("unknown group type '{}'", s)))
}

fn build_tower(d: &TowerDecl) -> Result<GaloisTower, LoadError> {
    if let Some(std) = &d.standard {
        if d.gtype.is_some() || !d.vars.is_empty() || !d.generators.is_empty() {
            return Err(LoadError::Parse(format!("tower {}: a standard tower takes no further fields", d.name)));
        }
        return Ok(GaloisTower::standard(parse_gtype(std)?));
    }
    let gtype = parse_gtype(d.gtype.as_deref().ok_or_else(|| LoadError::Parse(format!("tower {}: missing gtype", d.name)))?)?;
    let mut gens = Vec::new();
    for (letter, images) in &d.generators {
        let mut chars = letter.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(LoadError::Parse(format!("tower {}: generator names are single letters, not '{}'", d.name, letter)));
        };
        let d6 = d6_of_letter(c).ok_or_else(|| LoadError::Semantic(format!("tower {}: no generator '{}'", d.name, c)))?;
        let pairs: Vec<(String, String)> = images.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        let aut = GaloisTower::parse_var_aut(&d.vars, &pairs).map_err(|e| LoadError::from_core(&format!("tower {}", d.name), e))?;
        gens.push((c, aut, d6));
    }
    // generators in the canonical order of the group type
    let order = gtype.generator_letters();
    gens.sort_by_key(|(c, _, _)| order.iter().position(|x| x == c).unwrap_or(usize::MAX));
    GaloisTower::new(&d.name, d.vars.clone(), gtype, gens).map_err(|e| LoadError::from_core(&format!("tower {}", d.name), e))
}

fn build_extension(d: &ExtensionDecl, tower: &GaloisTower) -> Result<ExtensionDescriptor, LoadError> {
    let what = format!("extension {}", d.name);
    let elem = |s: &Option<String>, field: &str| -> Result<_, LoadError> {
        let s = s.as_ref().ok_or_else(|| LoadError::Parse(format!("{}: missing {}", what, field)))?;
        tower.parse_element(s).map_err(|e| LoadError::from_core(&what, e))
    };
    Ok(match d.kind.as_str() {
        "subfield" => {
            let gens = d
                .fixing
                .iter()
                .map(|w| tower.parse_word(w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| LoadError::from_core(&what, e))?;
            ExtensionDescriptor::subfield(&d.name, tower.subgroup(&gens))
        }
        "quadratic" => ExtensionDescriptor::quadratic(&d.name, elem(&d.radicand, "radicand")?),
        "kummer-cubic" => ExtensionDescriptor::kummer_cubic(&d.name, elem(&d.radicand, "radicand")?),
        "kummer-sextic" => {
            let beta = match &d.beta {
                Some(_) => Some(elem(&d.beta, "beta")?),
                None => None,
            };
            ExtensionDescriptor::kummer_sextic(&d.name, elem(&d.disc, "disc")?, beta)
        }
        other => return Err(LoadError::Parse(format!("{}: unknown kind '{}'", what, other))),
    })
}

fn build_fact(d: &FactDecl, tower: &GaloisTower) -> Result<ClassFact, LoadError> {
    let what = format!("assumed fact on {}", d.subject);
    let subject = tower.parse_element(&d.subject).map_err(|e| LoadError::from_core(&what, e))?;
    let generator = tower.parse_word(&d.generator).map_err(|e| LoadError::from_core(&what, e))?;
    let verdict = match d.verdict.as_str() {
        "IsNorm" => Verdict::IsNorm,
        "NotNorm" => Verdict::NotNorm,
        v => return Err(LoadError::Parse(format!("{}: verdict must be IsNorm or NotNorm, not '{}'", what, v))),
    };
    Ok(ClassFact::assumed(subject, generator, verdict))
}

fn build_point(d: &PointDecl, sc: &Scenario) -> Result<ClosedPointSpec, LoadError> {
    let what = format!("point {}", d.name);
    let s = sc.surfaces.get(&d.surface).ok_or_else(|| LoadError::Semantic(format!("{}: unknown surface '{}'", what, d.surface)))?;
    if let Some(c) = &d.construct {
        let pts = match c.as_str() {
            "2point" => construct_2point(s),
            "3point" => construct_3point(s).map(|p| vec![p]),
            other => return Err(LoadError::Parse(format!("{}: unknown construction '{}'", what, other))),
        }
        .map_err(|e| LoadError::from_core(&what, e))?;
        let n = pts.len();
        let mut p = pts
            .into_iter()
            .nth(d.choice)
            .ok_or_else(|| LoadError::Semantic(format!("{}: the construction gives {} points, no choice {}", what, n, d.choice)))?;
        p.name = d.name.clone();
        return Ok(p);
    }
    let ext_name = d.extension.as_ref().ok_or_else(|| LoadError::Parse(format!("{}: missing extension", what)))?;
    let (tower, ext) = sc.extensions.get(ext_name).ok_or_else(|| LoadError::Semantic(format!("{}: unknown extension '{}'", what, ext_name)))?;
    let surface_tower = &sc.surface_towers[&d.surface];
    if tower != surface_tower {
        return Err(LoadError::Semantic(format!("{}: extension {} lives over {}, the surface over {}", what, ext_name, tower, surface_tower)));
    }
    let degree = d.degree.ok_or_else(|| LoadError::Parse(format!("{}: missing degree", what)))?;
    if degree == 4 {
        return Ok(ClosedPointSpec::declared(&d.name, ext.clone(), d.general.unwrap_or(false)));
    }
    ClosedPointSpec::parse(s, &d.name, degree, ext, &d.lambda).map_err(|e| LoadError::from_core(&what, e))
}

/// Parse and build a scenario. In strict mode assumed facts are recorded
/// but not attached to any surface.
pub fn load(text: &str, strict: bool) -> Result<Scenario, LoadError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    let mut sc = Scenario {
        towers: BTreeMap::new(),
        extensions: BTreeMap::new(),
        surfaces: BTreeMap::new(),
        surface_towers: BTreeMap::new(),
        points: Vec::new(),
        assumed: BTreeMap::new(),
        ignored_facts: Vec::new(),
        commands: file.commands.clone(),
    };
    for d in &file.towers {
        let t = build_tower(d)?;
        if sc.towers.insert(d.name.clone(), t).is_some() {
            return Err(LoadError::Semantic(format!("tower {} declared twice", d.name)));
        }
    }
    let tower = |name: &str, what: &str| -> Result<GaloisTower, LoadError> {
        sc.towers.get(name).cloned().ok_or_else(|| LoadError::Semantic(format!("{}: unknown tower '{}'", what, name)))
    };
    let mut extensions = BTreeMap::new();
    for d in &file.extensions {
        let t = tower(&d.tower, &format!("extension {}", d.name))?;
        let e = build_extension(d, &t)?;
        if extensions.insert(d.name.clone(), (d.tower.clone(), e)).is_some() {
            return Err(LoadError::Semantic(format!("extension {} declared twice", d.name)));
        }
    }
    let mut assumed: BTreeMap<String, Vec<ClassFact>> = BTreeMap::new();
    let mut ignored = Vec::new();
    for d in &file.assumed {
        let t = tower(&d.tower, "assumed fact")?;
        let f = build_fact(d, &t)?;
        if strict {
            ignored.push(f.describe(&t));
        }
        assumed.entry(d.tower.clone()).or_default().push(f);
    }
    let mut surfaces = BTreeMap::new();
    for d in &file.surfaces {
        let what = format!("surface {}", d.name);
        let t = tower(&d.tower, &what)?;
        let xi = t.parse_element(&d.xi).map_err(|e| LoadError::from_core(&what, e))?;
        let rho = match &d.rho {
            Some(r) => Some(t.parse_element(r).map_err(|e| LoadError::from_core(&what, e))?),
            None => None,
        };
        let facts = if strict { vec![] } else { assumed.get(&d.tower).cloned().unwrap_or_default() };
        let s = make_surface(&d.name, &t, xi, rho, facts).map_err(|e| LoadError::from_core(&what, e))?;
        if surfaces.insert(d.name.clone(), s).is_some() {
            return Err(LoadError::Semantic(format!("surface {} declared twice", d.name)));
        }
        sc.surface_towers.insert(d.name.clone(), d.tower.clone());
    }
    sc.extensions = extensions;
    sc.assumed = assumed;
    sc.ignored_facts = ignored;
    sc.surfaces = surfaces;
    for d in &file.points {
        let p = build_point(d, &sc)?;
        if sc.point(&d.surface, &d.name).is_some() {
            return Err(LoadError::Semantic(format!("point {} declared twice on {}", d.name, d.surface)));
        }
        sc.points.push((d.surface.clone(), p));
    }
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scenario_loads() {
        let sc = load("{}", false).unwrap();
        assert!(sc.commands.is_empty());
    }

    #[test]
    fn syntax_and_reference_errors() {
        assert!(matches!(load("{", false), Err(LoadError::Parse(_))));
        assert!(matches!(load(r#"{"tower": []}"#, false), Err(LoadError::Parse(_))));
        let bad_ref = r#"{"surfaces": [{"name": "S", "tower": "T", "xi": "1"}]}"#;
        assert!(matches!(load(bad_ref, false), Err(LoadError::Semantic(_))));
        let bad_poly = r#"{"towers": [{"name": "T", "standard": "S3"}], "surfaces": [{"name": "S", "tower": "T", "xi": "s+*"}]}"#;
        assert!(matches!(load(bad_poly, false), Err(LoadError::Parse(_))));
    }

    #[test]
    fn explicit_tower_matches_the_standard_one() {
        let text = r#"{"towers": [{"name": "Z", "gtype": "Z6", "vars": ["x1", "x2", "x3", "y"],
            "generators": {"h": {"y": "-y"}, "g": {"x1": "x2", "x2": "x3", "x3": "x1"}}}]}"#;
        let sc = load(text, false).unwrap();
        let t = &sc.towers["Z"];
        let std = GaloisTower::standard_z6();
        let x = t.parse_element("x1*y").unwrap();
        for c in ['g', 'h'] {
            assert_eq!(t.apply(t.generator(c).unwrap(), &x), std.apply(std.generator(c).unwrap(), &x));
        }
    }

    #[test]
    fn strict_mode_keeps_assumed_facts_out() {
        let text = r#"{"towers": [{"name": "T", "standard": "S3"}],
            "assumed": [{"tower": "T", "subject": "s+1", "generator": "g", "verdict": "NotNorm"}],
            "surfaces": [{"name": "S", "tower": "T", "xi": "s+1"}]}"#;
        let loose = load(text, false).unwrap();
        assert_eq!(loose.surfaces["S"].assumed.len(), 1);
        let strict = load(text, true).unwrap();
        assert!(strict.surfaces["S"].assumed.is_empty());
        assert_eq!(strict.ignored_facts.len(), 1);
    }
}
