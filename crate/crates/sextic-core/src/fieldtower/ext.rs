//! Extensions E/k, composites FE, and arithmetic in FE = F(r), rⁿ = a.

use super::ratfn::RatFn;
use super::qw::Qw;
use super::tower::{ElemId, GType, GaloisTower};
use crate::error::{Error, Result};
use std::fmt;

/// How an extension E/k is described.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtKind {
    /// E = F^H for a normal subgroup H of the tower group.
    Subfield { fixing: Vec<ElemId> },
    /// E = k(r), r³ = a with a ∈ k; generator w: r ↦ ωr.
    KummerCubic { radicand: RatFn },
    /// E = k(r), r² = a with a ∈ k; generator t: r ↦ −r.
    Quadratic { radicand: RatFn },
    /// E = k(√d, ∛β) with Galois group S3 generated by w and t.
    ///
    /// `beta` lies in F when √d ∈ F; the composite FE is then F(r), r³ = β.
    KummerSextic { disc: RatFn, beta: Option<RatFn> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionDescriptor {
    pub name: String,
    pub kind: ExtKind,
    pub symbol: String,
}

impl ExtensionDescriptor {
    pub fn subfield(name: &str, fixing: Vec<ElemId>) -> Self {
        ExtensionDescriptor { name: name.into(), kind: ExtKind::Subfield { fixing }, symbol: "r".into() }
    }

    pub fn kummer_cubic(name: &str, radicand: RatFn) -> Self {
        ExtensionDescriptor { name: name.into(), kind: ExtKind::KummerCubic { radicand }, symbol: "r".into() }
    }

    pub fn quadratic(name: &str, radicand: RatFn) -> Self {
        ExtensionDescriptor { name: name.into(), kind: ExtKind::Quadratic { radicand }, symbol: "r".into() }
    }

    pub fn kummer_sextic(name: &str, disc: RatFn, beta: Option<RatFn>) -> Self {
        ExtensionDescriptor { name: name.into(), kind: ExtKind::KummerSextic { disc, beta }, symbol: "r".into() }
    }
}

/// The intersection E ∩ F, described by its fixing subgroup in G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Trivial,
    Quadratic { fixing: Vec<ElemId> },
    Contained { fixing: Vec<ElemId> },
}

/// Group structure of Gal(E/k) for radical descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EGroup {
    /// E ⊆ F; the E-part is the restriction of the F-part.
    InF,
    Z2,
    Z3,
    S3,
}

impl EGroup {
    pub fn order(&self) -> usize {
        match self {
            EGroup::InF => 1,
            EGroup::Z2 => 2,
            EGroup::Z3 => 3,
            EGroup::S3 => 6,
        }
    }

    pub fn elements(&self) -> Vec<EPart> {
        match self {
            EGroup::InF => vec![EPart::id()],
            EGroup::Z2 => vec![EPart::id(), EPart { w: 0, t: true }],
            EGroup::Z3 => (0..3).map(|w| EPart { w, t: false }).collect(),
            EGroup::S3 => (0..3).flat_map(|w| [EPart { w, t: false }, EPart { w, t: true }]).collect(),
        }
    }
}

/// Element wʲ∘tᵉ of Gal(E/k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EPart {
    pub w: u8,
    pub t: bool,
}

impl EPart {
    pub fn id() -> EPart {
        EPart { w: 0, t: false }
    }

    /// `self ∘ other`, using t w t = w⁻¹.
    pub fn compose(&self, other: &EPart) -> EPart {
        let j2 = if self.t { (3 - other.w) % 3 } else { other.w };
        EPart { w: (self.w + j2) % 3, t: self.t ^ other.t }
    }

    pub fn is_id(&self) -> bool {
        self.w == 0 && !self.t
    }

    pub fn name(&self) -> String {
        match (self.w, self.t) {
            (0, false) => "id".into(),
            (0, true) => "t".into(),
            (1, false) => "w".into(),
            (2, false) => "w^2".into(),
            (1, true) => "wt".into(),
            _ => "w^2t".into(),
        }
    }

    /// Permutation of the three cube roots r·ω^i (index i) induced on E.
    pub fn root_perm(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let j = if self.t { (3 - i) % 3 } else { i };
            *o = (j + self.w as usize) % 3;
        }
        out
    }
}

/// An element (restriction to F, restriction to E) of Gal(FE/k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeElem {
    pub f: ElemId,
    pub e: EPart,
}

/// FE = F(r) with rⁿ = a, a ∈ F; n = 1 means FE = F.
#[derive(Clone, Debug, PartialEq)]
pub struct Radical {
    pub n: usize,
    pub a: RatFn,
}

/// Element Σ cᵢ rⁱ of FE.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem {
    pub c: Vec<RatFn>,
}

impl ExtElem {
    pub fn in_f(&self) -> Option<&RatFn> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn render(&self, vars: &[String], symbol: &str) -> String {
        let mut parts = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let s = x.render(vars);
            let s = if i == 0 {
                s
            } else {
                let rp = if i == 1 { symbol.to_string() } else { format!("{}^{}", symbol, i) };
                if x.is_one() {
                    rp
                } else {
                    format!("({})*{}", s, rp)
                }
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Radical {
    pub fn trivial(nvars: usize) -> Radical {
        Radical { n: 1, a: RatFn::one(nvars) }
    }

    pub fn nvars(&self) -> usize {
        self.a.nvars()
    }

    pub fn from_f(&self, x: &RatFn) -> ExtElem {
        let mut c = vec![RatFn::zero(self.nvars()); self.n];
        c[0] = x.clone();
        ExtElem { c }
    }

    pub fn one(&self) -> ExtElem {
        self.from_f(&RatFn::one(self.nvars()))
    }

    /// The radical r itself (n ≥ 2).
    pub fn r(&self) -> ExtElem {
        let mut c = vec![RatFn::zero(self.nvars()); self.n];
        if self.n == 1 {
            c[0] = self.a.clone();
        } else {
            c[1] = RatFn::one(self.nvars());
        }
        ExtElem { c }
    }

    pub fn add(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        ExtElem { c: x.c.iter().zip(&y.c).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        ExtElem { c: x.c.iter().zip(&y.c).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, x: &ExtElem, s: &RatFn) -> ExtElem {
        ExtElem { c: x.c.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn mul(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let n = self.n;
        let mut c = vec![RatFn::zero(self.nvars()); n];
        for i in 0..n {
            if x.c[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.c[j].is_zero() {
                    continue;
                }
                let p = x.c[i].mul(&y.c[j]);
                let k = i + j;
                if k >= n {
                    c[k - n] = c[k - n].add(&p.mul(&self.a));
                } else {
                    c[k] = c[k].add(&p);
                }
            }
        }
        ExtElem { c }
    }

    /// Substitute r ↦ ζ·r for an n-th root of unity ζ.
    fn twist(&self, x: &ExtElem, zeta: &Qw) -> ExtElem {
        let mut z = Qw::one();
        let mut c = Vec::with_capacity(self.n);
        for xi in &x.c {
            c.push(xi.scale(&z));
            z = &z * zeta;
        }
        ExtElem { c }
    }

    pub fn inv(&self, x: &ExtElem) -> Option<ExtElem> {
        if x.is_zero() {
            return None;
        }
        match self.n {
            1 => Some(self.from_f(&x.c[0].inv()?)),
            2 => {
                let conj = self.twist(x, &Qw::from_int(-1));
                let norm = self.mul(x, &conj).c[0].clone();
                Some(self.scale(&conj, &norm.inv()?))
            }
            3 => {
                let w = Qw::omega();
                let c1 = self.twist(x, &w);
                let c2 = self.twist(x, &w.pow(2).unwrap());
                let prod = self.mul(&c1, &c2);
                let norm = self.mul(x, &prod).c[0].clone();
                Some(self.scale(&prod, &norm.inv()?))
            }
            _ => None,
        }
    }

    pub fn div(&self, x: &ExtElem, y: &ExtElem) -> Option<ExtElem> {
        self.inv(y).map(|i| self.mul(x, &i))
    }

    pub fn pow(&self, x: &ExtElem, e: i64) -> Option<ExtElem> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = self.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Some(acc)
    }

    /// Reduce a polynomial in r with coefficients in F.
    pub fn from_r_poly(&self, coeffs: &[RatFn]) -> ExtElem {
        let mut out = ExtElem { c: vec![RatFn::zero(self.nvars()); self.n] };
        let rr = self.r();
        let mut rp = self.one();
        for c in coeffs {
            out = self.add(&out, &self.scale(&rp, c));
            rp = self.mul(&rp, &rr);
        }
        out
    }
}

/// Gal(FE/k) with its generators as listed per intersection pattern.
#[derive(Clone, Debug)]
pub struct CompositeGroup {
    pub ext: ExtensionDescriptor,
    pub intersection: Intersection,
    pub egroup: EGroup,
    pub ext_degree: usize,
    pub generators: Vec<(String, CompositeElem)>,
    pub elements: Vec<CompositeElem>,
    /// Arithmetic model of FE; `None` when only the presentation is available.
    pub radical: Option<Radical>,
    beta: Option<RatFn>,
    gtype: GType,
}

fn subgroup_of(tower: &GaloisTower, set: &[ElemId]) -> bool {
    let mut s = set.to_vec();
    s.sort();
    s.dedup();
    !s.is_empty() && tower.subgroup(&s) == s
}

fn is_normal(tower: &GaloisTower, h: &[ElemId]) -> bool {
    tower.element_ids().all(|g| {
        let gi = tower.inverse(g);
        h.iter().all(|&x| h.contains(&tower.mul(tower.mul(g, x), gi)))
    })
}

fn stabilizer_of(tower: &GaloisTower, xs: &[RatFn]) -> Vec<ElemId> {
    tower.element_ids().filter(|&u| xs.iter().all(|x| tower.apply(u, x) == *x)).collect()
}

/// Normalize a descriptor and determine E ∩ F.
pub fn classify_extension(tower: &GaloisTower, ext: &ExtensionDescriptor) -> Result<(ExtensionDescriptor, Intersection, EGroup)> {
    let undecided = |what: &str| Error::UnsupportedExtension(format!("could not decide whether {} in F", what));
    match &ext.kind {
        ExtKind::Subfield { fixing } => {
            if !subgroup_of(tower, fixing) {
                return Err(Error::UnsupportedExtension("fixing set is not a subgroup".into()));
            }
            if !is_normal(tower, fixing) {
                return Err(Error::UnsupportedExtension("the fixed field is not Galois over k".into()));
            }
            let mut fx = fixing.clone();
            fx.sort();
            fx.dedup();
            Ok((
                ExtensionDescriptor { kind: ExtKind::Subfield { fixing: fx.clone() }, ..ext.clone() },
                Intersection::Contained { fixing: fx },
                EGroup::InF,
            ))
        }
        ExtKind::KummerCubic { radicand } | ExtKind::Quadratic { radicand } => {
            let n = if matches!(ext.kind, ExtKind::KummerCubic { .. }) { 3 } else { 2 };
            if radicand.is_zero() || !tower.in_base_field(radicand) {
                return Err(Error::UnsupportedExtension("radicand must be a nonzero element of k".into()));
            }
            match radicand.nth_root(n).map_err(|_| undecided("the radical lies"))? {
                Some(root) => {
                    let fixing = stabilizer_of(tower, &[root]);
                    if fixing.len() == tower.size() {
                        return Err(Error::UnsupportedExtension("radicand is a power in k, so E = k".into()));
                    }
                    Ok((ExtensionDescriptor::subfield(&ext.name, fixing.clone()), Intersection::Contained { fixing }, EGroup::InF))
                }
                None => Ok((ext.clone(), Intersection::Trivial, if n == 3 { EGroup::Z3 } else { EGroup::Z2 })),
            }
        }
        ExtKind::KummerSextic { disc, beta } => {
            if disc.is_zero() || !tower.in_base_field(disc) {
                return Err(Error::UnsupportedExtension("discriminant must be a nonzero element of k".into()));
            }
            match disc.nth_root(2).map_err(|_| undecided("the square root lies"))? {
                None => Ok((ext.clone(), Intersection::Trivial, EGroup::S3)),
                Some(delta) => {
                    let u = stabilizer_of(tower, &[delta.clone()]);
                    if u.len() == tower.size() {
                        return Err(Error::UnsupportedExtension("discriminant is a square in k".into()));
                    }
                    let beta = beta.as_ref().ok_or_else(|| {
                        Error::UnsupportedExtension("sqrt(d) lies in F, so beta in F must be supplied".into())
                    })?;
                    if beta.is_zero() {
                        return Err(Error::UnsupportedExtension("beta must be nonzero".into()));
                    }
                    let binv = beta.inv().unwrap();
                    for v in tower.element_ids() {
                        let img = tower.apply(v, beta);
                        let want = if u.contains(&v) { beta } else { &binv };
                        if img != *want {
                            return Err(Error::UnsupportedExtension(format!(
                                "beta must satisfy u(beta) = beta on Gal(F/k(sqrt d)) and u(beta) = 1/beta otherwise; fails for {}",
                                tower.word(v)
                            )));
                        }
                    }
                    match beta.nth_root(3).map_err(|_| undecided("the cube root lies"))? {
                        Some(c) => {
                            let fixing = stabilizer_of(tower, &[delta, c]);
                            Ok((ExtensionDescriptor::subfield(&ext.name, fixing.clone()), Intersection::Contained { fixing }, EGroup::InF))
                        }
                        None => Ok((ext.clone(), Intersection::Quadratic { fixing: u }, EGroup::S3)),
                    }
                }
            }
        }
    }
}

impl CompositeGroup {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn gtype(&self) -> GType {
        self.gtype
    }

    pub fn index_of(&self, x: &CompositeElem) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    pub fn mul(&self, tower: &GaloisTower, a: &CompositeElem, b: &CompositeElem) -> CompositeElem {
        CompositeElem {
            f: tower.mul(a.f, b.f),
            e: if self.egroup == EGroup::InF { EPart::id() } else { a.e.compose(&b.e) },
        }
    }

    pub fn identity(&self) -> CompositeElem {
        CompositeElem { f: 0, e: EPart::id() }
    }

    pub fn order(&self, tower: &GaloisTower, a: &CompositeElem) -> usize {
        let mut x = *a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(tower, &x, a);
            k += 1;
        }
        k
    }

    pub fn inverse(&self, tower: &GaloisTower, a: &CompositeElem) -> CompositeElem {
        *self.elements.iter().find(|b| self.mul(tower, a, b) == self.identity()).unwrap()
    }

    pub fn generator(&self, name: &str) -> Option<CompositeElem> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, e)| *e)
    }

    pub fn element_name(&self, tower: &GaloisTower, x: &CompositeElem) -> String {
        if self.egroup == EGroup::InF {
            return tower.word(x.f);
        }
        format!("({},{})", tower.word(x.f), x.e.name())
    }

    /// Image of r under `x`: r ↦ c·r^k.
    fn radical_image(&self, x: &CompositeElem) -> Option<(RatFn, usize)> {
        let rad = self.radical.as_ref()?;
        let nv = rad.nvars();
        match self.egroup {
            EGroup::InF => None,
            EGroup::Z2 => Some((RatFn::int(nv, if x.e.t { -1 } else { 1 }), 1)),
            EGroup::Z3 => Some((RatFn::constant(nv, Qw::omega().pow(x.e.w as i64).unwrap()), 1)),
            EGroup::S3 => {
                if !x.e.t {
                    Some((RatFn::constant(nv, Qw::omega().pow(x.e.w as i64).unwrap()), 1))
                } else {
                    let b = self.beta.as_ref()?;
                    let c = RatFn::constant(nv, Qw::omega().pow(-(x.e.w as i64)).unwrap()).div(b).unwrap();
                    Some((c, 2))
                }
            }
        }
    }

    /// Apply a composite element to an element of FE.
    pub fn apply(&self, tower: &GaloisTower, x: &CompositeElem, v: &ExtElem) -> Result<ExtElem> {
        let rad = self.radical.as_ref().ok_or_else(|| {
            Error::Unsupported("no arithmetic model for FE (degree-6 extension disjoint from F)".into())
        })?;
        if v.c.len() != rad.n {
            return Err(Error::DomainMismatch("element does not belong to FE".into()));
        }
        if rad.n == 1 {
            return Ok(rad.from_f(&tower.apply(x.f, &v.c[0])));
        }
        let (c, k) = self.radical_image(x).unwrap();
        let mut img_r = rad.one();
        let basis = rad.scale(&rad.pow(&rad.r(), k as i64).unwrap(), &c);
        let mut out = ExtElem { c: vec![RatFn::zero(rad.nvars()); rad.n] };
        for ci in &v.c {
            out = rad.add(&out, &rad.scale(&img_r, &tower.apply(x.f, ci)));
            img_r = rad.mul(&img_r, &basis);
        }
        Ok(out)
    }

    pub fn norm(&self, tower: &GaloisTower, x: &CompositeElem, v: &ExtElem) -> Result<ExtElem> {
        let rad = self.radical.as_ref().ok_or_else(|| Error::Unsupported("no arithmetic model for FE".into()))?;
        let n = self.order(tower, x);
        let mut acc = v.clone();
        let mut cur = v.clone();
        for _ in 1..n {
            cur = self.apply(tower, x, &cur)?;
            acc = rad.mul(&acc, &cur);
        }
        Ok(acc)
    }

    pub fn is_fixed(&self, tower: &GaloisTower, v: &ExtElem, set: &[CompositeElem]) -> Result<bool> {
        for x in set {
            if self.apply(tower, x, v)? != *v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, tower: &GaloisTower, gens: &[CompositeElem]) -> Vec<CompositeElem> {
        let mut set = vec![self.identity()];
        let mut i = 0;
        while i < set.len() {
            for g in gens {
                let y = self.mul(tower, &set[i], g);
                if !set.contains(&y) {
                    set.push(y);
                }
            }
            i += 1;
        }
        set.sort();
        set
    }

    /// Parse an element of FE written in the tower variables and the radical symbol.
    pub fn parse_ext_elem(&self, tower: &GaloisTower, s: &str) -> Result<ExtElem> {
        let rad = self.radical.as_ref().ok_or_else(|| Error::Unsupported("no arithmetic model for FE".into()))?;
        let nv = tower.nvars();
        let mut names = tower.vars().to_vec();
        names.push(self.ext.symbol.clone());
        let x = super::parse::parse_ratfn(s, &names).map_err(|e| Error::Parse(e.to_string()))?;
        if rad.n == 1 && (x.num().degree_in(nv) > 0 || x.den().degree_in(nv) > 0) {
            return Err(Error::DomainMismatch("radical symbol used although E is inside F".into()));
        }
        let to_f = |p: &super::poly::Poly| -> Vec<RatFn> {
            p.coefficients_in(nv)
                .into_iter()
                .map(|c| {
                    let mut terms = Vec::new();
                    for (m, v) in c.terms() {
                        terms.push((m[..nv].to_vec(), v.clone()));
                    }
                    RatFn::from_poly(super::poly::Poly::from_terms(nv, terms))
                })
                .collect()
        };
        let num = rad.from_r_poly(&to_f(x.num()));
        let den = rad.from_r_poly(&to_f(x.den()));
        rad.div(&num, &den).ok_or_else(|| Error::Parse("division by zero in FE".into()))
    }

    pub fn render(&self, tower: &GaloisTower, v: &ExtElem) -> String {
        v.render(tower.vars(), &self.ext.symbol)
    }
}

/// Gal(FE/k) for the supported intersection patterns.
pub fn composite_group(tower: &GaloisTower, ext: &ExtensionDescriptor) -> Result<CompositeGroup> {
    let (ext, intersection, egroup) = classify_extension(tower, ext)?;
    let gtype = tower.gtype();
    let gens_f: Vec<(String, CompositeElem)> =
        tower.generators().into_iter().map(|(c, u)| (c.to_string(), CompositeElem { f: u, e: EPart::id() })).collect();
    let w = CompositeElem { f: 0, e: EPart { w: 1, t: false } };
    let t = CompositeElem { f: 0, e: EPart { w: 0, t: true } };
    let mut beta = None;
    let (generators, ext_degree, radical) = match (&intersection, &ext.kind) {
        (Intersection::Contained { fixing }, _) => (gens_f, tower.size() / fixing.len(), Some(Radical::trivial(tower.nvars()))),
        (Intersection::Trivial, ExtKind::KummerCubic { radicand }) => {
            let mut g = gens_f;
            g.push(("w".into(), w));
            (g, 3, Some(Radical { n: 3, a: radicand.clone() }))
        }
        (Intersection::Trivial, ExtKind::Quadratic { radicand }) => {
            let mut g = gens_f;
            g.push(("t".into(), t));
            (g, 2, Some(Radical { n: 2, a: radicand.clone() }))
        }
        (Intersection::Trivial, ExtKind::KummerSextic { .. }) => {
            let mut g = gens_f;
            g.push(("w".into(), w));
            g.push(("t".into(), t));
            (g, 6, None)
        }
        (Intersection::Quadratic { fixing }, ExtKind::KummerSextic { beta: b, .. }) => {
            let b = b.clone().unwrap();
            beta = Some(b.clone());
            let gen = |c: char| tower.generator(c).unwrap();
            let mut g: Vec<(String, CompositeElem)> = vec![("g".into(), CompositeElem { f: gen('g'), e: EPart::id() }), ("w".into(), w)];
            let tflag = EPart { w: 0, t: true };
            match gtype {
                GType::Z6 => g.push(("ht".into(), CompositeElem { f: gen('h'), e: tflag })),
                GType::S3 => g.push(("ft".into(), CompositeElem { f: gen('f'), e: tflag })),
                GType::D6 => {
                    let h = gen('h');
                    let f = gen('f');
                    let s = tower.mul(h, f);
                    let (uname, u, vname, v) = if fixing.contains(&h) {
                        ("h", h, "ft", f)
                    } else if fixing.contains(&f) {
                        ("f", f, "ht", h)
                    } else {
                        ("s", s, "ht", h)
                    };
                    g.push((uname.into(), CompositeElem { f: u, e: EPart::id() }));
                    g.push((vname.into(), CompositeElem { f: v, e: tflag }));
                }
            }
            (g, 6, Some(Radical { n: 3, a: b }))
        }
        _ => return Err(Error::UnsupportedExtension("unsupported intersection pattern".into())),
    };
    let mut cg = CompositeGroup {
        ext,
        intersection: intersection.clone(),
        egroup,
        ext_degree,
        generators,
        elements: Vec::new(),
        radical,
        beta,
        gtype,
    };
    let gens: Vec<CompositeElem> = cg.generators.iter().map(|g| g.1).collect();
    cg.elements = cg.subgroup(tower, &gens);
    let expected = match &intersection {
        Intersection::Trivial => tower.size() * ext_degree,
        Intersection::Quadratic { .. } => tower.size() * ext_degree / 2,
        Intersection::Contained { .. } => tower.size(),
    };
    if cg.elements.len() != expected {
        return Err(Error::UnsupportedExtension(format!(
            "composite group has order {}, expected {}",
            cg.elements.len(),
            expected
        )));
    }
    Ok(cg)
}

impl fmt::Display for CompositeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.e.name())
    }
}
