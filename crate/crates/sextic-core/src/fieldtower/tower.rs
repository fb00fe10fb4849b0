//! Galois towers: a rational function field F = Q(ω)(x_1, …, x_n) with a finite
//! group of variable automorphisms and an embedding of the group into D6.

use super::parse::parse_ratfn;
use super::qw::Qw;
use super::ratfn::RatFn;
use crate::curveconfig::hexagon::D6;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Group type of a sextic G-del Pezzo surface.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GType {
    Z6,
    S3,
    D6,
}

impl GType {
    pub fn order(&self) -> usize {
        match self {
            GType::Z6 | GType::S3 => 6,
            GType::D6 => 12,
        }
    }

    /// Generator letters of the chosen presentation.
    pub fn generator_letters(&self) -> &'static [char] {
        match self {
            GType::Z6 => &['g', 'h'],
            GType::S3 => &['g', 'f'],
            GType::D6 => &['g', 'h', 'f'],
        }
    }

    pub fn parse(s: &str) -> Option<GType> {
        match s.to_ascii_uppercase().as_str() {
            "Z6" | "Z/6" => Some(GType::Z6),
            "S3" => Some(GType::S3),
            "D6" => Some(GType::D6),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GType::Z6 => "Z6",
            GType::S3 => "S3",
            GType::D6 => "D6",
        }
    }
}

impl fmt::Display for GType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Automorphism `x_i ↦ ζ6^{zeta[i]} · x_{perm[i]}` of the rational function field,
/// fixing Q(ω).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarAut {
    pub perm: Vec<usize>,
    pub zeta: Vec<u8>,
}

impl VarAut {
    pub fn identity(n: usize) -> VarAut {
        VarAut { perm: (0..n).collect(), zeta: vec![0; n] }
    }

    pub fn new(perm: Vec<usize>, zeta: Vec<u8>) -> Result<VarAut> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidTower("variable map is not a permutation".into()));
            }
            seen[p] = true;
        }
        if zeta.len() != n {
            return Err(Error::InvalidTower("scale list length mismatch".into()));
        }
        Ok(VarAut { perm, zeta: zeta.into_iter().map(|z| z % 6).collect() })
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VarAut) -> VarAut {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut zeta = vec![0; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            zeta[i] = (other.zeta[i] + self.zeta[j]) % 6;
        }
        VarAut { perm, zeta }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.zeta.iter().all(|&z| z == 0)
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> VarAut {
        let mut x = self.clone();
        let mut prev = VarAut::identity(self.nvars());
        while !x.is_identity() {
            prev = x.clone();
            x = x.compose(self);
        }
        prev
    }

    pub fn apply(&self, x: &RatFn) -> RatFn {
        if self.is_identity() {
            return x.clone();
        }
        let scales: Vec<Qw> = self.zeta.iter().map(|&z| Qw::zeta6_pow(z as i64)).collect();
        x.substitute_scaled_perm(&self.perm, &scales)
    }

    /// Whether variable `i` is mapped to a unit multiple of itself.
    pub fn preserves_var(&self, i: usize) -> bool {
        self.perm[i] == i
    }
}

/// One element of a tower group together with its canonical word and its
/// image under the embedding into D6.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub word: String,
    pub aut: VarAut,
    pub d6: D6,
}

pub type ElemId = usize;

/// A splitting field with its Galois group and embedding into D6.
#[derive(Clone, Debug)]
pub struct GaloisTower {
    name: String,
    vars: Vec<String>,
    gtype: GType,
    gens: Vec<(char, ElemId)>,
    elements: Vec<GroupElement>,
    table: Vec<Vec<ElemId>>,
}

impl PartialEq for GaloisTower {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.gtype == other.gtype
            && self.gens.len() == other.gens.len()
            && self.gens.iter().zip(&other.gens).all(|((a, x), (b, y))| {
                a == b && self.elements[*x].aut == other.elements[*y].aut && self.elements[*x].d6 == other.elements[*y].d6
            })
    }
}

impl GaloisTower {
    /// Build a tower from generator automorphisms and their hexagon images.
    pub fn new(name: &str, vars: Vec<String>, gtype: GType, gens: Vec<(char, VarAut, D6)>) -> Result<GaloisTower> {
        let n = vars.len();
        if vars.iter().any(|v| v == "w") {
            return Err(Error::InvalidTower("the name 'w' is reserved".into()));
        }
        let letters: Vec<char> = gens.iter().map(|g| g.0).collect();
        if letters != gtype.generator_letters() {
            return Err(Error::InvalidTower(format!(
                "group type {} needs generators {:?}, got {:?}",
                gtype,
                gtype.generator_letters(),
                letters
            )));
        }
        for (_, a, _) in &gens {
            if a.nvars() != n {
                return Err(Error::InvalidTower("generator acts on the wrong number of variables".into()));
            }
        }
        let mut elements = vec![GroupElement { word: String::new(), aut: VarAut::identity(n), d6: D6::identity() }];
        let mut index: HashMap<VarAut, ElemId> = HashMap::new();
        index.insert(VarAut::identity(n), 0);
        let mut frontier = vec![0];
        while let Some(cur) = (!frontier.is_empty()).then(|| frontier.remove(0)) {
            for (c, a, d) in &gens {
                let aut = elements[cur].aut.compose(a);
                let d6 = elements[cur].d6.compose(d);
                match index.get(&aut) {
                    Some(&j) => {
                        if elements[j].d6 != d6 {
                            return Err(Error::InvalidTower(
                                "hexagon images do not define a homomorphism on the generated group".into(),
                            ));
                        }
                    }
                    None => {
                        let word = format!("{}{}", elements[cur].word, c);
                        index.insert(aut.clone(), elements.len());
                        elements.push(GroupElement { word, aut, d6 });
                        frontier.push(elements.len() - 1);
                        if elements.len() > 64 {
                            return Err(Error::InvalidTower("generated group is too large".into()));
                        }
                    }
                }
            }
        }
        if elements.len() != gtype.order() {
            return Err(Error::InvalidTower(format!(
                "generated group has order {}, expected {} for {}",
                elements.len(),
                gtype.order(),
                gtype
            )));
        }
        let mut d6s: Vec<D6> = elements.iter().map(|e| e.d6).collect();
        d6s.sort();
        d6s.dedup();
        if d6s.len() != elements.len() {
            return Err(Error::InvalidTower("embedding into D6 is not injective".into()));
        }
        let m = elements.len();
        let mut table = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                let a = elements[i].aut.compose(&elements[j].aut);
                table[i][j] = index[&a];
            }
        }
        let gen_ids: Vec<(char, ElemId)> = gens.iter().map(|(c, a, _)| (*c, index[a])).collect();
        let tower = GaloisTower { name: name.to_string(), vars, gtype, gens: gen_ids, elements, table };
        tower.check_presentation()?;
        Ok(tower)
    }

    fn check_presentation(&self) -> Result<()> {
        let id = 0;
        let order_ok = |c: char, k: usize| self.generator(c).map(|x| self.pow(x, k as i64) == id && self.order(x) == k);
        if !order_ok('g', 3).unwrap_or(false) {
            return Err(Error::InvalidTower("g must have order 3".into()));
        }
        if let Some(h) = self.generator('h') {
            let g = self.generator('g').unwrap();
            if self.order(h) != 2 || self.mul(g, h) != self.mul(h, g) {
                return Err(Error::InvalidTower("h must be a central involution".into()));
            }
            if let Some(f) = self.generator('f') {
                if self.mul(f, h) != self.mul(h, f) {
                    return Err(Error::InvalidTower("f and h must commute".into()));
                }
            }
        }
        if let Some(f) = self.generator('f') {
            let g = self.generator('g').unwrap();
            if self.order(f) != 2 || self.mul(self.mul(f, g), f) != self.mul(g, g) {
                return Err(Error::InvalidTower("f must be an involution with fgf = g^2".into()));
            }
        }
        Ok(())
    }

    /// Z/6 on Q(ω)(x1, x2, x3, y): g cycles the x's, h: y ↦ −y.
    pub fn standard_z6() -> GaloisTower {
        let vars = ["x1", "x2", "x3", "y"].iter().map(|s| s.to_string()).collect();
        let g = VarAut::new(vec![1, 2, 0, 3], vec![0; 4]).unwrap();
        let h = VarAut::new(vec![0, 1, 2, 3], vec![0, 0, 0, 3]).unwrap();
        GaloisTower::new("Z6-standard", vars, GType::Z6, vec![('g', g, D6::theta()), ('h', h, D6::iota())]).unwrap()
    }

    /// S3 on Q(ω)(t1, t2, t3, s): g cycles the t's, f swaps t2 and t3, s fixed.
    pub fn standard_s3() -> GaloisTower {
        let vars = ["t1", "t2", "t3", "s"].iter().map(|s| s.to_string()).collect();
        let g = VarAut::new(vec![1, 2, 0, 3], vec![0; 4]).unwrap();
        let f = VarAut::new(vec![0, 2, 1, 3], vec![0; 4]).unwrap();
        GaloisTower::new("S3-standard", vars, GType::S3, vec![('g', g, D6::theta()), ('f', f, D6::sigma())]).unwrap()
    }

    /// D6 on Q(ω)(t1, t2, t3, y): g, f permute the t's, h: y ↦ −y.
    pub fn standard_d6() -> GaloisTower {
        let vars = ["t1", "t2", "t3", "y"].iter().map(|s| s.to_string()).collect();
        let g = VarAut::new(vec![1, 2, 0, 3], vec![0; 4]).unwrap();
        let h = VarAut::new(vec![0, 1, 2, 3], vec![0, 0, 0, 3]).unwrap();
        let f = VarAut::new(vec![0, 2, 1, 3], vec![0; 4]).unwrap();
        GaloisTower::new(
            "D6-standard",
            vars,
            GType::D6,
            vec![('g', g, D6::theta()), ('h', h, D6::iota()), ('f', f, D6::sigma())],
        )
        .unwrap()
    }

    pub fn standard(gtype: GType) -> GaloisTower {
        match gtype {
            GType::Z6 => GaloisTower::standard_z6(),
            GType::S3 => GaloisTower::standard_s3(),
            GType::D6 => GaloisTower::standard_d6(),
        }
    }

    /// Parse a generator image map such as `{"x1": "x2", "y": "-y"}`.
    pub fn parse_var_aut(vars: &[String], images: &[(String, String)]) -> Result<VarAut> {
        let n = vars.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut zeta = vec![0u8; n];
        for (src, img) in images {
            let i = vars
                .iter()
                .position(|v| v == src)
                .ok_or_else(|| Error::InvalidTower(format!("unknown variable '{}'", src)))?;
            let e = parse_ratfn(img, vars).map_err(|e| Error::Parse(e.to_string()))?;
            let bad = || Error::InvalidTower(format!("image '{}' of {} is not a root of unity times a variable", img, src));
            if !e.den().is_constant() || !e.num().is_monomial() {
                return Err(bad());
            }
            let (m, c) = e.num().leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let d = e.den().constant_value().unwrap();
            let c = c.div(&d).unwrap();
            if m.iter().sum::<u32>() != 1 {
                return Err(bad());
            }
            let j = m.iter().position(|&x| x == 1).unwrap();
            let k = c.root_of_unity_exponent().ok_or_else(bad)?;
            perm[i] = j;
            zeta[i] = k as u8;
        }
        VarAut::new(perm, zeta)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gtype(&self) -> GType {
        self.gtype
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element_ids(&self) -> std::ops::Range<ElemId> {
        0..self.elements.len()
    }

    pub fn generators(&self) -> Vec<(char, ElemId)> {
        self.gens.clone()
    }

    pub fn generator(&self, c: char) -> Option<ElemId> {
        self.gens.iter().find(|(x, _)| *x == c).map(|(_, i)| *i)
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a][b]
    }

    pub fn inverse(&self, a: ElemId) -> ElemId {
        (0..self.size()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn pow(&self, a: ElemId, k: i64) -> ElemId {
        let base = if k < 0 { self.inverse(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn order(&self, a: ElemId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn aut(&self, a: ElemId) -> &VarAut {
        &self.elements[a].aut
    }

    pub fn d6(&self, a: ElemId) -> D6 {
        self.elements[a].d6
    }

    pub fn element_by_d6(&self, d: &D6) -> Option<ElemId> {
        self.elements.iter().position(|e| e.d6 == *d)
    }

    /// Canonical name: the shortest generator word, or `id`.
    pub fn word(&self, a: ElemId) -> String {
        let w = &self.elements[a].word;
        if w.is_empty() {
            "id".into()
        } else {
            compress_word(w)
        }
    }

    /// Parse a word such as `g`, `g^2f`, `gh`, `s` (= hf), or `id`.
    pub fn parse_word(&self, s: &str) -> Result<ElemId> {
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "1" {
            return Ok(0);
        }
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut acc = 0;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let x = match c {
                's' => {
                    let h = self.generator('h').ok_or_else(|| Error::UnknownElement(s.into()))?;
                    let f = self.generator('f').ok_or_else(|| Error::UnknownElement(s.into()))?;
                    self.mul(h, f)
                }
                _ => self.generator(c).ok_or_else(|| Error::UnknownElement(s.into()))?,
            };
            let mut k: i64 = 1;
            if i < chars.len() && (chars[i] == '^' || chars[i].is_ascii_digit() || chars[i] == '-') {
                if chars[i] == '^' {
                    i += 1;
                }
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                k = text.parse().map_err(|_| Error::UnknownElement(s.into()))?;
            }
            acc = self.mul(acc, self.pow(x, k));
        }
        Ok(acc)
    }

    /// The Galois action `u(x)`.
    pub fn apply(&self, u: ElemId, x: &RatFn) -> RatFn {
        self.elements[u].aut.apply(x)
    }

    /// Norm_u(x) = ∏_{k < ord(u)} u^k(x).
    pub fn norm(&self, u: ElemId, x: &RatFn) -> RatFn {
        let n = self.order(u);
        let mut acc = x.clone();
        let mut cur = x.clone();
        for _ in 1..n {
            cur = self.apply(u, &cur);
            acc = acc.mul(&cur);
        }
        acc
    }

    pub fn is_fixed(&self, x: &RatFn, set: &[ElemId]) -> bool {
        set.iter().all(|&u| self.apply(u, x) == *x)
    }

    /// Whether `x` lies in the base field k = F^G.
    pub fn in_base_field(&self, x: &RatFn) -> bool {
        let gens: Vec<ElemId> = self.gens.iter().map(|g| g.1).collect();
        self.is_fixed(x, &gens)
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[ElemId]) -> Vec<ElemId> {
        let mut set = vec![0];
        let mut i = 0;
        while i < set.len() {
            for &g in gens {
                let y = self.mul(set[i], g);
                if !set.contains(&y) {
                    set.push(y);
                }
            }
            i += 1;
        }
        set.sort();
        set
    }

    pub fn parse_element(&self, s: &str) -> Result<RatFn> {
        parse_ratfn(s, &self.vars).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self, x: &RatFn) -> String {
        x.render(&self.vars)
    }

    pub fn var(&self, name: &str) -> Option<RatFn> {
        self.vars.iter().position(|v| v == name).map(|i| RatFn::var(self.nvars(), i))
    }

    pub fn one(&self) -> RatFn {
        RatFn::one(self.nvars())
    }

    /// Variables mapped to a unit multiple of themselves by every element.
    pub fn distinguished_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.elements.iter().all(|e| e.aut.preserves_var(i))).collect()
    }
}

/// Write runs of a repeated letter as powers: `ggf` becomes `g^2f`.
pub fn compress_word(w: &str) -> String {
    let chars: Vec<char> = w.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        out.push(chars[i]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_towers_have_expected_orders() {
        assert_eq!(GaloisTower::standard_z6().size(), 6);
        assert_eq!(GaloisTower::standard_s3().size(), 6);
        assert_eq!(GaloisTower::standard_d6().size(), 12);
    }

    #[test]
    fn apply_and_norm_examples() {
        let t = GaloisTower::standard_z6();
        let g = t.generator('g').unwrap();
        let h = t.generator('h').unwrap();
        let x1 = t.var("x1").unwrap();
        assert_eq!(t.apply(g, &x1), t.var("x2").unwrap());
        let y2 = t.parse_element("y^2").unwrap();
        assert_eq!(t.apply(h, &y2), y2);
        assert_eq!(t.norm(g, &x1), t.parse_element("x1*x2*x3").unwrap());
        let c = t.parse_element("3+w").unwrap();
        assert_eq!(t.norm(h, &c), c.mul(&c));
    }

    #[test]
    fn fixed_fields() {
        let t = GaloisTower::standard_s3();
        let g = t.generator('g').unwrap();
        let f = t.generator('f').unwrap();
        let s = t.var("s").unwrap();
        assert!(t.is_fixed(&s, &[g, f]));
        assert!(!t.is_fixed(&t.var("t1").unwrap(), &[g]));
        let gf = t.mul(g, f);
        let x = t.parse_element("t1/t2 + t2/t1").unwrap();
        assert!(t.is_fixed(&x, &[gf]));
    }

    #[test]
    fn words_parse_to_their_elements() {
        let t = GaloisTower::standard_d6();
        for e in t.element_ids() {
            assert_eq!(t.parse_word(&t.word(e)).unwrap(), e);
        }
        let s = t.parse_word("s").unwrap();
        assert_eq!(s, t.mul(t.generator('h').unwrap(), t.generator('f').unwrap()));
        assert_eq!(t.parse_word("g^3").unwrap(), 0);
    }

    #[test]
    fn inconsistent_embedding_is_rejected() {
        let vars: Vec<String> = ["x1", "x2", "x3", "y"].iter().map(|s| s.to_string()).collect();
        let g = VarAut::new(vec![1, 2, 0, 3], vec![0; 4]).unwrap();
        let h = VarAut::new(vec![0, 1, 2, 3], vec![0, 0, 0, 3]).unwrap();
        let r = GaloisTower::new("bad", vars, GType::Z6, vec![('g', g, D6::theta()), ('h', h, D6::sigma())]);
        assert!(r.is_err());
    }
}
