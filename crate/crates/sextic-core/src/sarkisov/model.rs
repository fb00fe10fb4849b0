//! Birational models described by their Severi–Brauer data, with or without
//! an explicit surface, and the data-level isomorphism test.

use super::field::{fields_equal, FieldDesc};
use crate::fieldtower::{norm_class, ClassFact, ElemId, GType, GaloisTower, RatFn};
use crate::surface::{is_isomorphic, IsoVerdict, SurfaceIndex, SurfaceSpec};
use crate::Tri;

/// A Brauer class over K (represented by ξ modulo Norm_g) or over L
/// (represented by ρ modulo Norm_h and the g-rotation), in the frame tower.
#[derive(Clone, Debug)]
pub enum ClassDesc {
    Trivial,
    Element { rep: RatFn, generator: ElemId, trivial: Tri },
}

impl ClassDesc {
    pub fn is_trivial(&self) -> Tri {
        match self {
            ClassDesc::Trivial => Tri::Yes,
            ClassDesc::Element { trivial, .. } => *trivial,
        }
    }

    pub fn render(&self, tower: &GaloisTower) -> String {
        match self {
            ClassDesc::Trivial => "trivial".into(),
            ClassDesc::Element { rep, generator, trivial } => {
                let st = match trivial {
                    Tri::Yes => "trivial",
                    Tri::No => "nontrivial",
                    Tri::Unknown => "status unknown",
                };
                format!("[{}] mod Norm_{} ({})", tower.render(rep), tower.word(*generator), st)
            }
        }
    }
}

/// Severi–Brauer data of a model relative to a frame tower F/k.
#[derive(Clone, Debug)]
pub struct ModelData {
    pub name: String,
    pub gtype: GType,
    /// The tower all field descriptors and class representatives refer to.
    pub frame: GaloisTower,
    /// Splitting field of the hexagon.
    pub f: FieldDesc,
    pub k: FieldDesc,
    /// Absent exactly for S3.
    pub l: Option<FieldDesc>,
    pub sb: ClassDesc,
    pub conic: Option<ClassDesc>,
    /// A full parametrization when one is available.
    pub surface: Option<SurfaceSpec>,
    pub assumed: Vec<ClassFact>,
}

fn gen(tower: &GaloisTower, c: char) -> ElemId {
    tower.generator(c).expect("generator present for this group type")
}

impl ModelData {
    pub fn from_surface(s: &SurfaceSpec) -> ModelData {
        let t = &s.tower;
        let sb = s.sb_data();
        ModelData {
            name: s.name.clone(),
            gtype: s.gtype(),
            frame: t.clone(),
            f: FieldDesc::whole(t),
            k: FieldDesc::in_f(&sb.k_fixing),
            l: sb.l_fixing.as_ref().map(|x| FieldDesc::in_f(x)),
            sb: ClassDesc::Element { rep: s.xi.clone(), generator: gen(t, 'g'), trivial: sb.k_trivial },
            conic: s.rho.as_ref().map(|r| ClassDesc::Element {
                rep: r.clone(),
                generator: gen(t, 'h'),
                trivial: sb.l_trivial.unwrap_or(Tri::Unknown),
            }),
            surface: Some(s.clone()),
            assumed: s.assumed.clone(),
        }
    }

    /// Index from the triviality of the two classes.
    pub fn index(&self) -> SurfaceIndex {
        let k = self.sb.is_trivial();
        let l = self.conic.as_ref().map(|c| c.is_trivial()).unwrap_or(Tri::Yes);
        match (k, l) {
            (Tri::Yes, Tri::Yes) => SurfaceIndex::Known(1),
            (Tri::Yes, Tri::No) => SurfaceIndex::Known(2),
            (Tri::No, Tri::Yes) => SurfaceIndex::Known(3),
            (Tri::No, Tri::No) => SurfaceIndex::Known(6),
            _ => SurfaceIndex::Unknown,
        }
    }

    /// A readable canonical description of the data.
    pub fn key(&self) -> String {
        let t = &self.frame;
        let mut parts = vec![
            format!("{}", self.gtype),
            format!("F={}", self.f.render(t)),
            format!("K={}", self.k.render(t)),
        ];
        if let Some(l) = &self.l {
            parts.push(format!("L={}", l.render(t)));
        }
        parts.push(format!("X={}", self.sb.render(t)));
        if let Some(c) = &self.conic {
            parts.push(format!("Y={}", c.render(t)));
        }
        format!("{}/{}", t.name(), parts.join(";"))
    }

    pub fn describe(&self) -> String {
        format!("{} [{}] index {}", self.name, self.key(), self.index())
    }
}

/// Whether two classes agree, with the class facts that decided it.
pub fn classes_equivalent(tower: &GaloisTower, a: &ClassDesc, b: &ClassDesc, assumed: &[ClassFact], conic: bool) -> (Tri, Vec<ClassFact>) {
    let mut facts = Vec::new();
    let mut query = |x: Option<RatFn>, u: ElemId| -> Tri {
        let Some(x) = x else { return Tri::Unknown };
        match norm_class(tower, &x, u, None, assumed) {
            Ok(nc) => {
                if let Some(f) = nc.fact() {
                    facts.push(f.clone());
                }
                nc.tri_is_norm()
            }
            Err(_) => Tri::Unknown,
        }
    };
    let verdict = match (a, b) {
        (ClassDesc::Trivial, ClassDesc::Trivial) => Tri::Yes,
        (ClassDesc::Trivial, ClassDesc::Element { trivial, .. }) | (ClassDesc::Element { trivial, .. }, ClassDesc::Trivial) => *trivial,
        (ClassDesc::Element { rep: x, generator: u, .. }, ClassDesc::Element { rep: y, generator: v, .. }) => {
            if u != v {
                Tri::Unknown
            } else if conic {
                let g = gen(tower, 'g');
                let mut acc = Tri::No;
                let mut r = x.clone();
                for _ in 0..3 {
                    acc = acc.or(query(y.div(&r), *u));
                    r = tower.apply(g, &r);
                }
                acc
            } else {
                query(y.div(x), *u).or(query(Some(y.mul(x)), *u))
            }
        }
    };
    (verdict, facts)
}

/// Outcome of comparing two models.
#[derive(Clone, Debug)]
pub struct ModelIso {
    pub verdict: Tri,
    pub reason: String,
    pub facts: Vec<ClassFact>,
}

/// Isomorphism of models: through the parametrizations when both are
/// available, and through the Severi–Brauer data otherwise.
pub fn model_iso(a: &ModelData, b: &ModelData) -> ModelIso {
    if let (Some(s), Some(t)) = (&a.surface, &b.surface) {
        if s.tower == t.tower {
            let v = is_isomorphic(s, t);
            let (reason, facts) = match &v {
                IsoVerdict::Yes { moves, .. } => (format!("{} moves", moves.len()), vec![]),
                IsoVerdict::YesByData { facts } => ("equivalent Severi-Brauer data".to_string(), facts.clone()),
                IsoVerdict::No(r) | IsoVerdict::Unknown(r) => (r.clone(), vec![]),
            };
            return ModelIso { verdict: v.tri(), reason, facts };
        }
    }
    let no = |r: &str| ModelIso { verdict: Tri::No, reason: r.to_string(), facts: vec![] };
    if a.gtype != b.gtype {
        return no("the Galois groups of the splitting fields differ");
    }
    if a.index() != b.index() && a.index() != SurfaceIndex::Unknown && b.index() != SurfaceIndex::Unknown {
        return no("the indices differ");
    }
    if a.frame != b.frame {
        return ModelIso { verdict: Tri::Unknown, reason: "the models are described over different frames".into(), facts: vec![] };
    }
    let t = &a.frame;
    let mut verdict = Tri::Yes;
    for (name, x, y) in [("F", Some(&a.f), Some(&b.f)), ("K", Some(&a.k), Some(&b.k)), ("L", a.l.as_ref(), b.l.as_ref())] {
        let v = match (x, y) {
            (Some(x), Some(y)) => fields_equal(t, x, y),
            (None, None) => Tri::Yes,
            _ => Tri::No,
        };
        if v == Tri::No {
            return no(&format!("the fields {} differ", name));
        }
        verdict = verdict.and(v);
    }
    let assumed: Vec<ClassFact> = a.assumed.iter().chain(&b.assumed).cloned().collect();
    let (vk, mut facts) = classes_equivalent(t, &a.sb, &b.sb, &assumed, false);
    if vk == Tri::No {
        return ModelIso { verdict: Tri::No, reason: "the Severi-Brauer classes over K differ".into(), facts };
    }
    let vl = match (&a.conic, &b.conic) {
        (Some(x), Some(y)) => {
            let (v, f) = classes_equivalent(t, x, y, &assumed, true);
            facts.extend(f);
            v
        }
        _ => Tri::Yes,
    };
    if vl == Tri::No {
        return ModelIso { verdict: Tri::No, reason: "the conic classes over L differ".into(), facts };
    }
    let verdict = verdict.and(vk).and(vl);
    let reason = match verdict {
        Tri::Yes => "equal fields and equivalent classes".to_string(),
        _ => "field equality or class equivalence is undecided".to_string(),
    };
    ModelIso { verdict, reason, facts }
}
