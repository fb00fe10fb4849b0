//! Command parsing and execution against a loaded scenario.

use crate::scenario::Scenario;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sextic_core::birgroup::{
    check_hexagon, check_relation, explore_graph, hexagon_word, psi_image, relation_templates, word_to_generators, AutWitness,
    BirGraph, BirWord, Token,
};
use sextic_core::curveconfig::CurveConfig;
use sextic_core::fieldtower::{ClassFact, GType, GaloisTower};
use sextic_core::points::{general_position, point_conditions, ClosedPointSpec};
use sextic_core::sarkisov::{are_birational, is_birationally_rigid, link, model_iso, BirVerdict, FieldDesc, LinkRecord, ModelData, Rigidity};
use sextic_core::surface::sampling::{valid_params, violating_params};
use sextic_core::surface::{
    automorphism_description, cocycle_assignments, index, is_isomorphic, make_surface, IsoVerdict, SurfaceIndex, SurfaceSpec,
    TwistedAutomorphism,
};
use sextic_core::{Error, Tri};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Run-wide flags.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub strict: bool,
    pub seed: u64,
    pub depth: usize,
    pub dump_dir: Option<PathBuf>,
}

/// A model named in a command: a scenario surface, or the target of the
/// link at a point of a surface (written `S/p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelRef {
    Surface(String),
    Target { surface: String, point: String },
}

impl ModelRef {
    fn parse(s: &str) -> ModelRef {
        match s.split_once('/') {
            Some((a, b)) => ModelRef::Target { surface: a.into(), point: b.into() },
            None => ModelRef::Surface(s.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate { surface: String, point: Option<String> },
    Classify { surface: String },
    Iso { a: ModelRef, b: ModelRef },
    Link { surface: String, point: String },
    Rigid { surface: String, complete: bool },
    Birational { a: ModelRef, b: ModelRef },
    Explore { surface: String, depth: Option<usize> },
    Witness { surface: String, edge: String, aut: String },
    Psi { surface: String, word: String },
    CheckRelation { surface: String, word: String },
    DumpConfig { n: usize },
    Sample { gtype: GType, count: usize },
}

/// Parse one command line; the error is a usage message.
pub fn parse_command(line: &str) -> Result<Command, String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let usage = |u: &str| Err(format!("usage: {}", u));
    let rest = |from: usize| words[from..].concat();
    Ok(match words.as_slice() {
        ["validate", s] => Command::Validate { surface: s.to_string(), point: None },
        ["validate", s, p] => Command::Validate { surface: s.to_string(), point: Some(p.to_string()) },
        ["validate", ..] => return usage("validate S [point]"),
        ["classify", s] => Command::Classify { surface: s.to_string() },
        ["classify", ..] => return usage("classify S"),
        ["iso", a, b] => Command::Iso { a: ModelRef::parse(a), b: ModelRef::parse(b) },
        ["iso", ..] => return usage("iso A B"),
        ["link", s, p] => Command::Link { surface: s.to_string(), point: p.to_string() },
        ["link", ..] => return usage("link S point"),
        ["rigid", s] => Command::Rigid { surface: s.to_string(), complete: false },
        ["rigid", s, "complete"] => Command::Rigid { surface: s.to_string(), complete: true },
        ["rigid", ..] => return usage("rigid S [complete]"),
        ["birational", a, b] => Command::Birational { a: ModelRef::parse(a), b: ModelRef::parse(b) },
        ["birational", ..] => return usage("birational A B"),
        ["explore", s] => Command::Explore { surface: s.to_string(), depth: None },
        ["explore", s, d] => match d.parse() {
            Ok(d) => Command::Explore { surface: s.to_string(), depth: Some(d) },
            Err(_) => return usage("explore S [depth]"),
        },
        ["explore", ..] => return usage("explore S [depth]"),
        ["witness", s, e, a] => Command::Witness { surface: s.to_string(), edge: e.to_string(), aut: a.to_string() },
        ["witness", ..] => return usage("witness S edge automorphism"),
        ["psi", s, _, ..] => Command::Psi { surface: s.to_string(), word: rest(2) },
        ["psi", ..] => return usage("psi S word"),
        ["check-relation", s, _, ..] => Command::CheckRelation { surface: s.to_string(), word: rest(2) },
        ["check-relation", ..] => return usage("check-relation S word"),
        ["dump-config", n] => match n.parse() {
            Ok(n) => Command::DumpConfig { n },
            Err(_) => return usage("dump-config n"),
        },
        ["dump-config", ..] => return usage("dump-config n"),
        ["sample", g, c] => match (GType::parse(g), c.parse()) {
            (Some(gtype), Ok(count)) => Command::Sample { gtype, count },
            _ => return usage("sample Z6|S3|D6 count"),
        },
        ["sample", ..] => return usage("sample Z6|S3|D6 count"),
        [] => return Err("empty command".into()),
        [c, ..] => return Err(format!("unknown command '{}'", c)),
    })
}

/// Outcome of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A semantic error (exit code 3).
    Error(String),
    /// An undecided verdict in strict mode (exit code 4).
    Blocked(String),
}

/// Report section of one command.
#[derive(Clone, Debug)]
pub struct Section {
    pub lines: Vec<String>,
    pub assumed: Vec<String>,
    pub status: Status,
}

struct Out {
    lines: Vec<String>,
    assumed: Vec<String>,
    /// The verdict that strict mode refuses, if any.
    undecided: Option<String>,
}

impl Out {
    fn new() -> Out {
        Out { lines: vec![], assumed: vec![], undecided: None }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn text(&mut self, block: &str) {
        self.lines.extend(block.lines().map(|l| l.to_string()));
    }

    fn facts<'a>(&mut self, tower: &GaloisTower, facts: impl IntoIterator<Item = &'a ClassFact>) {
        for f in facts {
            if f.is_assumed() {
                let d = f.describe(tower);
                if !self.assumed.contains(&d) {
                    self.assumed.push(d);
                }
            }
        }
    }

    fn undecided(&mut self, why: impl Into<String>) {
        if self.undecided.is_none() {
            self.undecided = Some(why.into());
        }
    }
}

/// Mutable state shared by the commands of one run.
pub struct Session<'a> {
    pub scenario: &'a Scenario,
    pub options: &'a Options,
    graphs: BTreeMap<String, BirGraph>,
}

impl<'a> Session<'a> {
    pub fn new(scenario: &'a Scenario, options: &'a Options) -> Session<'a> {
        Session { scenario, options, graphs: BTreeMap::new() }
    }

    pub fn execute(&mut self, cmd: &Command) -> Section {
        let mut out = Out::new();
        let status = match self.dispatch(cmd, &mut out) {
            Ok(()) => match (&out.undecided, self.options.strict) {
                (Some(why), true) => Status::Blocked(why.clone()),
                _ => Status::Ok,
            },
            Err(Error::UnknownOrientation(e)) if self.options.strict => Status::Blocked(format!("orientation of {} is unknown", e)),
            Err(e) => Status::Error(e.to_string()),
        };
        Section { lines: out.lines, assumed: out.assumed, status }
    }

    fn surface(&self, name: &str) -> Result<&'a SurfaceSpec, Error> {
        self.scenario.surfaces.get(name).ok_or_else(|| Error::Precondition(format!("unknown surface '{}'", name)))
    }

    fn point(&self, surface: &str, name: &str) -> Result<&'a ClosedPointSpec, Error> {
        self.scenario.point(surface, name).ok_or_else(|| Error::Precondition(format!("unknown point '{}' on {}", name, surface)))
    }

    fn model(&self, r: &ModelRef, out: &mut Out) -> Result<ModelData, Error> {
        match r {
            ModelRef::Surface(s) => Ok(ModelData::from_surface(self.surface(s)?)),
            ModelRef::Target { surface, point } => {
                let s = self.surface(surface)?;
                let rec = link(s, self.point(surface, point)?)?;
                out.facts(&s.tower, &rec.facts);
                Ok(rec.target)
            }
        }
    }

    fn dispatch(&mut self, cmd: &Command, out: &mut Out) -> Result<(), Error> {
        match cmd {
            Command::Validate { surface, point } => self.validate(surface, point.as_deref(), out),
            Command::Classify { surface } => self.classify(surface, out),
            Command::Iso { a, b } => self.iso(a, b, out),
            Command::Link { surface, point } => {
                let s = self.surface(surface)?;
                let rec = link(s, self.point(surface, point)?)?;
                out.text(&rec.report());
                out.line(format!("key {}", rec.key));
                out.line(format!("inverse key {}", rec.inverse_key));
                out.facts(&s.tower, &rec.facts);
                Ok(())
            }
            Command::Rigid { surface, complete } => {
                let s = self.surface(surface)?;
                out.facts(&s.tower, &s.assumed);
                match is_birationally_rigid(s, &self.scenario.points_on(surface), *complete) {
                    Rigidity::SuperRigid => out.line("birationally superrigid"),
                    Rigidity::Rigid => out.line("birationally rigid relative to the declared point universe"),
                    Rigidity::NotRigid(w) => out.line(format!("not birationally rigid: {}", w)),
                    Rigidity::Conditional(c) => {
                        out.line("rigidity conditional on:");
                        for x in &c {
                            out.line(format!("  {}", x));
                        }
                        out.undecided("rigidity depends on open conditions");
                    }
                }
                Ok(())
            }
            Command::Birational { a, b } => self.birational(a, b, out),
            Command::Explore { surface, depth } => self.explore(surface, depth.unwrap_or(self.options.depth), out),
            Command::Witness { surface, edge, aut } => self.witness(surface, edge, aut, out),
            Command::Psi { surface, word } => self.psi(surface, word, out),
            Command::CheckRelation { surface, word } => self.check(surface, word, out),
            Command::DumpConfig { n } => self.dump_config(*n, out),
            Command::Sample { gtype, count } => sample(*gtype, *count, self.options.seed, out),
        }
    }

    fn validate(&self, surface: &str, point: Option<&str>, out: &mut Out) -> Result<(), Error> {
        let s = self.surface(surface)?;
        match point {
            None => {
                let rep = cocycle_assignments(s)?;
                out.line(format!("{} ({}), {}", s.name, s.gtype(), s.render_params()));
                for (g, a) in &rep.generators {
                    out.line(format!("  alpha_{} = {}", g, a.render(&s.tower)));
                }
                out.line(format!("  cocycle verified on {} relations: {}", rep.relators_checked.len(), rep.relators_checked.join(", ")));
                for m in &s.load_moves {
                    out.line(format!("  normalized by {}", m.render(&s.tower)));
                }
            }
            Some(p) => {
                let p = self.point(surface, p)?;
                out.line(format!("point {} of degree {} on {} ({:?})", p.name, p.degree, s.name, p.case));
                if let Some(g) = &p.group {
                    out.line(format!("  splitting field {}", FieldDesc::of_extension(&s.tower, g).render(&s.tower)));
                }
                out.line(format!("  first component {}", p.render_coords(s)));
                let conds = point_conditions(s, p)?;
                for c in &conds {
                    out.line(format!("  {}: {}", c.label, if c.holds { "holds" } else { "fails" }));
                }
                let valid = conds.iter().all(|c| c.holds);
                out.line(format!("  valid: {}", valid));
                out.line(format!("  general position: {}", general_position(s, p)));
            }
        }
        out.facts(&s.tower, &s.assumed);
        Ok(())
    }

    fn classify(&self, surface: &str, out: &mut Out) -> Result<(), Error> {
        let s = self.surface(surface)?;
        let sb = s.sb_data();
        let t = &s.tower;
        out.line(format!("{}: gtype {}, {}", s.name, s.gtype(), s.render_params()));
        let status = |c: &sextic_core::fieldtower::NormClass| match c.fact() {
            Some(f) => f.describe(t),
            None => "undecided".to_string(),
        };
        out.line(format!("  xi over Norm_g: {}", status(&sb.sb_status)));
        if let Some(c) = &sb.conic_status {
            out.line(format!("  rho over Norm_h: {}", status(c)));
        }
        out.line(format!("  Am_K = {}", sb.am_k));
        if let Some(a) = &sb.am_l {
            out.line(format!("  Am_L = {}", a));
        }
        let idx = index(s);
        out.line(format!("  index {}", idx));
        if idx == SurfaceIndex::Unknown {
            out.undecided("the index is undecided");
        }
        out.line(format!("  automorphisms {}", automorphism_description(s)));
        out.facts(t, sb.sb_status.fact());
        if let Some(c) = &sb.conic_status {
            out.facts(t, c.fact());
        }
        Ok(())
    }

    fn iso(&self, a: &ModelRef, b: &ModelRef, out: &mut Out) -> Result<(), Error> {
        if let (ModelRef::Surface(x), ModelRef::Surface(y)) = (a, b) {
            let (s, u) = (self.surface(x)?, self.surface(y)?);
            match is_isomorphic(s, u) {
                IsoVerdict::Yes { moves, beta } => {
                    let ms: Vec<String> = moves.iter().map(|m| m.render(&s.tower)).collect();
                    out.line(format!("Yes: moves [{}]", ms.join(", ")));
                    out.line(format!("  conjugating element {}", beta.render(&s.tower)));
                }
                IsoVerdict::YesByData { facts } => {
                    out.line("Yes: equivalent Severi-Brauer data");
                    out.facts(&s.tower, &facts);
                }
                IsoVerdict::No(r) => out.line(format!("No: {}", r)),
                IsoVerdict::Unknown(r) => {
                    out.line(format!("Unknown: {}", r));
                    out.undecided("isomorphism is undecided");
                }
            }
            return Ok(());
        }
        let (ma, mb) = (self.model(a, out)?, self.model(b, out)?);
        let v = model_iso(&ma, &mb);
        out.line(format!("{}: {}", verdict_word(v.verdict), v.reason));
        out.facts(&ma.frame, &v.facts);
        if v.verdict == Tri::Unknown {
            out.undecided("isomorphism is undecided");
        }
        Ok(())
    }

    fn birational(&self, a: &ModelRef, b: &ModelRef, out: &mut Out) -> Result<(), Error> {
        let (ma, mb) = (self.model(a, out)?, self.model(b, out)?);
        let mut surfaces: Vec<String> = Vec::new();
        for r in [a, b] {
            let (ModelRef::Surface(s) | ModelRef::Target { surface: s, .. }) = r;
            if !surfaces.contains(s) {
                surfaces.push(s.clone());
            }
        }
        let mut links: Vec<LinkRecord> = Vec::new();
        let mut points = Vec::new();
        for name in &surfaces {
            let s = self.surface(name)?;
            for p in self.scenario.points_on(name) {
                if let Ok(rec) = link(s, &p) {
                    links.push(rec);
                }
                points.push(p);
            }
        }
        match are_birational(&ma, &mb, &links, &points) {
            BirVerdict::Yes { chain, reason } => {
                out.line(format!("Yes: {}", reason));
                for step in &chain {
                    out.line(format!("  {}", step.describe()));
                    out.facts(&ma.frame, &step.record.facts);
                }
            }
            BirVerdict::No(r) => out.line(format!("No: {}", r)),
            BirVerdict::Unknown(r) => {
                out.line(format!("Unknown: {}", r));
                out.undecided("birationality is undecided");
            }
        }
        out.facts(&ma.frame, ma.assumed.iter().chain(&mb.assumed));
        Ok(())
    }

    fn graph(&mut self, surface: &str) -> Result<&mut BirGraph, Error> {
        if !self.graphs.contains_key(surface) {
            let s = self.surface(surface)?;
            let g = explore_graph(s, &self.scenario.points_on(surface), self.options.depth);
            self.graphs.insert(surface.to_string(), g);
        }
        Ok(self.graphs.get_mut(surface).expect("graph just inserted"))
    }

    fn explore(&mut self, surface: &str, depth: usize, out: &mut Out) -> Result<(), Error> {
        let s = self.surface(surface)?;
        let g = explore_graph(s, &self.scenario.points_on(surface), depth);
        let dump = g.dump();
        out.line(format!("depth {}: {} vertices, {} edges", depth, g.vertices.len(), g.edges.len()));
        match &self.options.dump_dir {
            Some(dir) => {
                let path = dir.join(format!("graph-{}.txt", file_stem(surface)));
                write_dump(&path, &dump)?;
                out.line(format!("graph written to {}", path.display()));
            }
            None => out.text(&dump),
        }
        if g.edges.iter().any(|e| e.orientation == sextic_core::sarkisov::Orientation::Unknown) {
            out.undecided("some edges have an undecided orientation");
        }
        out.facts(&s.tower, &s.assumed);
        self.graphs.insert(surface.to_string(), g);
        Ok(())
    }

    fn witness(&mut self, surface: &str, edge: &str, aut: &str, out: &mut Out) -> Result<(), Error> {
        let s = self.surface(surface)?;
        let psi = parse_automorphism(s, aut)?;
        let g = self.graph(surface)?;
        let e = edge_id(g, edge)?;
        let o = g.apply_witness(e, &AutWitness { label: aut.to_string(), aut: psi });
        out.line(format!("{} classified as {}", edge, o));
        Ok(())
    }

    fn psi(&mut self, surface: &str, word: &str, out: &mut Out) -> Result<(), Error> {
        let g = self.graph(surface)?;
        let w = parse_word(g, word)?;
        let img = psi_image(g, &w)?;
        out.line(format!("word {}", w.render(g)));
        out.line(format!("image {}", img));
        out.line(format!("reduced {}, identity {}", img.is_reduced(), img.is_identity()));
        let letters: Vec<String> = img.free_letters().into_iter().collect();
        if !letters.is_empty() {
            out.line(format!("Z-factor letters {}", letters.join(", ")));
        }
        Ok(())
    }

    fn check(&mut self, surface: &str, word: &str, out: &mut Out) -> Result<(), Error> {
        let g = self.graph(surface)?;
        let mut all = true;
        if word == "templates" {
            let ts = relation_templates(g);
            out.line(format!("{} relation instances", ts.len()));
            for (name, w) in &ts {
                let r = check_relation(g, w)?;
                let id = psi_image(g, w)?.is_identity();
                all &= r.holds && id;
                out.line(format!("  type {} {}: data {}, psi identity {}", name, w.render(g), r.holds, id));
            }
        } else if let Some(inner) = word.strip_prefix("hexagon(").and_then(|x| x.strip_suffix(')')) {
            let ids = inner.split(',').map(|l| edge_id(g, l)).collect::<Result<Vec<_>, _>>()?;
            let chi: [usize; 6] = ids.try_into().map_err(|_| Error::Precondition("a hexagon needs six links".into()))?;
            let r = check_hexagon(g, &chi)?;
            for l in &r.lines {
                out.line(format!("  {}", l));
            }
            let id = psi_image(g, &hexagon_word(g, &chi)?)?.is_identity();
            out.line(format!("psi identity {}", id));
            all = r.holds && id;
        } else {
            let w = parse_word(g, word)?;
            let r = check_relation(g, &w)?;
            for l in &r.lines {
                out.line(format!("  {}", l));
            }
            let id = psi_image(g, &w)?.is_identity();
            out.line(format!("psi identity {}", id));
            all = r.holds && id;
        }
        out.line(format!("relation {}", if all { "holds" } else { "fails" }));
        Ok(())
    }

    fn dump_config(&self, n: usize, out: &mut Out) -> Result<(), Error> {
        let c = CurveConfig::enumerate(n)?;
        let degree = 9 - n;
        let regular: Vec<usize> = (0..c.len()).map(|i| c.neighbors(i).len()).collect();
        out.line(format!("degree {} (n = {}): {} (-1)-classes", degree, n, c.len()));
        out.line(format!("labels {}", c.labels().join(" ")));
        if regular.windows(2).all(|w| w[0] == w[1]) {
            out.line(format!("intersection graph regular of degree {}", regular.first().copied().unwrap_or(0)));
        }
        if let Some(dir) = &self.options.dump_dir {
            let path = dir.join(format!("config-{}.txt", n));
            write_dump(&path, &c.dump(&[]))?;
            out.line(format!("configuration written to {}", path.display()));
        }
        Ok(())
    }
}

fn sample(gtype: GType, count: usize, seed: u64, out: &mut Out) -> Result<(), Error> {
    let t = GaloisTower::standard(gtype);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut accepted, mut rejected) = (0, 0);
    for i in 0..count {
        let (xi, rho) = valid_params(gtype, &mut rng);
        let s = make_surface(&format!("sample{}", i), &t, xi, rho, vec![])?;
        cocycle_assignments(&s)?;
        accepted += 1;
        let (xi, rho) = violating_params(gtype, &mut rng);
        if make_surface(&format!("violating{}", i), &t, xi, rho, vec![]).is_err() {
            rejected += 1;
        }
    }
    out.line(format!("seed {}", seed));
    out.line(format!("{} of {} valid parameter sets give verified cocycles", accepted, count));
    out.line(format!("{} of {} violating parameter sets rejected", rejected, count));
    if rejected != count {
        return Err(Error::Precondition(format!("{} violating parameter sets were accepted", count - rejected)));
    }
    Ok(())
}

fn verdict_word(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "Yes",
        Tri::No => "No",
        Tri::Unknown => "Unknown",
    }
}

fn file_stem(s: &str) -> String {
    s.chars().map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn write_dump(path: &std::path::Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Precondition(format!("cannot write {}: {}", path.display(), e)))
}

fn edge_id(g: &BirGraph, label: &str) -> Result<usize, Error> {
    g.edges
        .iter()
        .position(|e| e.label == label)
        .ok_or_else(|| Error::Precondition(format!("no edge labeled '{}' in the graph of {}", label, g.base.name)))
}

/// `alpha_g`, `alpha_h`, `alpha_f` (values of the twisted action) or
/// `toric(l1;l2)`.
fn parse_automorphism(s: &SurfaceSpec, text: &str) -> Result<TwistedAutomorphism, Error> {
    if let Some(c) = text.strip_prefix("alpha_") {
        let mut cs = c.chars();
        if let (Some(c), None) = (cs.next(), cs.next()) {
            return s.alpha(c).cloned().ok_or_else(|| Error::Precondition(format!("{} has no generator {}", s.name, c)));
        }
    }
    if let Some(inner) = text.strip_prefix("toric(").and_then(|x| x.strip_suffix(')')) {
        if let Some((a, b)) = inner.split_once(';') {
            return Ok(TwistedAutomorphism::toric(s.tower.parse_element(a)?, s.tower.parse_element(b)?));
        }
    }
    Err(Error::Parse(format!("'{}' is neither alpha_<generator> nor toric(l1;l2)", text)))
}

/// A comma-separated word: either edge labels forming a tour at the base,
/// or generator tokens `A(e)`, `B(e)`, `Binv(e)`, `C(e)`, `D(e)`.
fn parse_word(g: &BirGraph, text: &str) -> Result<BirWord, Error> {
    let items = split_items(text);
    let token = |item: &str| -> Result<Option<Token>, Error> {
        for (prefix, make) in [
            ("A(", Token::A as fn(usize) -> Token),
            ("Binv(", Token::BInv),
            ("B(", Token::B),
            ("C(", Token::C),
            ("D(", Token::D),
        ] {
            if let Some(inner) = item.strip_prefix(prefix).and_then(|x| x.strip_suffix(')')) {
                return Ok(Some(make(edge_id(g, inner)?)));
            }
        }
        Ok(None)
    };
    let mut tokens = Vec::new();
    let mut tour = Vec::new();
    for item in &items {
        match token(item)? {
            Some(t) => tokens.push(t),
            None => tour.push(edge_id(g, item)?),
        }
    }
    match (tokens.is_empty(), tour.is_empty()) {
        (_, true) => Ok(BirWord::new(tokens)),
        (true, false) => word_to_generators(g, &tour),
        (false, false) => Err(Error::Precondition("a word is either a tour of links or a product of generator tokens".into())),
    }
}

/// Split at commas outside brackets and parentheses.
fn split_items(text: &str) -> Vec<String> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            items.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        items.push(cur);
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_lines_parse() {
        assert_eq!(parse_command("classify S").unwrap(), Command::Classify { surface: "S".into() });
        assert_eq!(
            parse_command("iso S/q0 S").unwrap(),
            Command::Iso { a: ModelRef::Target { surface: "S".into(), point: "q0".into() }, b: ModelRef::Surface("S".into()) }
        );
        assert_eq!(parse_command("psi S a, b").unwrap(), Command::Psi { surface: "S".into(), word: "a,b".into() });
        assert_eq!(parse_command("rigid S complete").unwrap(), Command::Rigid { surface: "S".into(), complete: true });
        assert!(parse_command("frobnicate").is_err());
        assert!(parse_command("dump-config six").is_err());
        assert!(parse_command("").is_err());
    }

    #[test]
    fn items_split_outside_brackets() {
        assert_eq!(split_items("S[q0],A(S/q0[q1]),hexagon(a,b)"), vec!["S[q0]", "A(S/q0[q1])", "hexagon(a,b)"]);
    }
}
