//! The Picard lattice of the plane blown up in `n` points and its (−1)-classes.
//!
//! A class `d·H − Σ mᵢ·eᵢ` is stored as the vector `(d; m1, …, mn)`; the
//! intersection form is `d·d′ − Σ mᵢ·m′ᵢ` and the anticanonical degree is
//! `3d − Σ mᵢ`. The exceptional curve `eᵢ` is therefore `(0; …, −1, …)`.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CurveClass {
    pub d: i32,
    pub m: Vec<i32>,
}

impl CurveClass {
    pub fn new(d: i32, m: Vec<i32>) -> CurveClass {
        CurveClass { d, m }
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn zero(n: usize) -> CurveClass {
        CurveClass { d: 0, m: vec![0; n] }
    }

    /// The hyperplane class `H`.
    pub fn hyperplane(n: usize) -> CurveClass {
        CurveClass { d: 1, m: vec![0; n] }
    }

    /// The exceptional curve over the point `i` (zero-based).
    pub fn exceptional(n: usize, i: usize) -> CurveClass {
        let mut m = vec![0; n];
        m[i] = -1;
        CurveClass { d: 0, m }
    }

    /// The line through the points `i` and `j` (zero-based).
    pub fn line(n: usize, i: usize, j: usize) -> CurveClass {
        let mut m = vec![0; n];
        m[i] = 1;
        m[j] = 1;
        CurveClass { d: 1, m }
    }

    /// The anticanonical class `3H − Σ eᵢ`.
    pub fn anticanonical(n: usize) -> CurveClass {
        CurveClass { d: 3, m: vec![1; n] }
    }

    pub fn add(&self, o: &CurveClass) -> CurveClass {
        CurveClass { d: self.d + o.d, m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CurveClass) -> CurveClass {
        CurveClass { d: self.d - o.d, m: self.m.iter().zip(&o.m).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: i32) -> CurveClass {
        CurveClass { d: self.d * k, m: self.m.iter().map(|a| a * k).collect() }
    }

    pub fn self_intersection(&self) -> i32 {
        self.d * self.d - self.m.iter().map(|a| a * a).sum::<i32>()
    }

    pub fn anticanonical_degree(&self) -> i32 {
        3 * self.d - self.m.iter().sum::<i32>()
    }

    pub fn is_minus_one(&self) -> bool {
        self.self_intersection() == -1 && self.anticanonical_degree() == 1
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", self.d, ms.join(","))
    }
}

/// Intersection number of two classes on the same lattice.
pub fn intersection(a: &CurveClass, b: &CurveClass) -> Result<i32> {
    if a.n() != b.n() {
        return Err(Error::DomainMismatch(format!("lattices of rank {} and {}", a.n() + 1, b.n() + 1)));
    }
    Ok(a.d * b.d - a.m.iter().zip(&b.m).map(|(x, y)| x * y).sum::<i32>())
}

/// The labeled (−1)-curves of the plane blown up in `n` points.
#[derive(Clone, Debug)]
pub struct CurveConfig {
    n: usize,
    classes: Vec<CurveClass>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    by_class: HashMap<CurveClass, usize>,
    inter: Vec<Vec<i32>>,
}

fn label_for(n: usize, c: &CurveClass) -> String {
    let ones = |v: i32| -> Vec<usize> { (0..n).filter(|&i| c.m[i] == v).map(|i| i + 1).collect() };
    match c.d {
        0 => format!("E{}", ones(-1)[0]),
        1 => {
            let ij = ones(1);
            let (i, j) = (ij[0], ij[1]);
            if n < 7 && j <= 3 {
                format!("F{}", 6 - i - j)
            } else {
                format!("L{}{}", i, j)
            }
        }
        2 => {
            let z = ones(0);
            match z.len() {
                0 => "C".to_string(),
                1 => format!("C{}", z[0]),
                _ => format!("C{}{}", z[0], z[1]),
            }
        }
        _ => format!("F{}", ones(2)[0]),
    }
}

/// Sort key giving the label order `E*`, `F*` (hexagon), `L**`, `C*`, cubics.
fn order_key(n: usize, c: &CurveClass) -> (u8, Vec<i32>) {
    let rank = match c.d {
        0 => 0,
        1 if n < 7 && c.m.iter().skip(3).all(|&x| x == 0) => 1,
        1 => 2,
        2 => 3,
        _ => 4,
    };
    let sub = match rank {
        0 => vec![c.m.iter().position(|&x| x == -1).unwrap() as i32],
        1 => vec![(0..3).find(|&i| c.m[i] == 0).unwrap() as i32],
        2 => c.m.iter().map(|&x| -x).collect(),
        3 => c.m.iter().map(|&x| x).collect(),
        _ => vec![c.m.iter().position(|&x| x == 2).unwrap() as i32],
    };
    (rank, sub)
}

impl CurveConfig {
    /// Enumerate all (−1)-classes by bounded search, for `n ∈ {3, 5, 6, 7}`.
    pub fn enumerate(n: usize) -> Result<CurveConfig> {
        if ![3, 5, 6, 7].contains(&n) {
            return Err(Error::Unsupported(format!("configurations of {} points", n)));
        }
        let mut classes = Vec::new();
        let mut m = vec![-1i32; n];
        for d in 0..=4 {
            m.iter_mut().for_each(|x| *x = -1);
            loop {
                let c = CurveClass::new(d, m.clone());
                if c.is_minus_one() {
                    classes.push(c);
                }
                let mut k = 0;
                while k < n {
                    m[k] += 1;
                    if m[k] <= 3 {
                        break;
                    }
                    m[k] = -1;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        classes.sort_by_key(|c| order_key(n, c));
        let labels: Vec<String> = classes.iter().map(|c| label_for(n, c)).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let by_class = classes.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let inter = classes.iter().map(|a| classes.iter().map(|b| intersection(a, b).unwrap()).collect()).collect();
        Ok(CurveConfig { n, classes, labels, index, by_class, inter })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn class(&self, i: usize) -> &CurveClass {
        &self.classes[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn index_of_class(&self, c: &CurveClass) -> Option<usize> {
        self.by_class.get(c).copied()
    }

    pub fn class_of(&self, label: &str) -> Option<&CurveClass> {
        self.index_of(label).map(|i| &self.classes[i])
    }

    pub fn intersect(&self, i: usize, j: usize) -> i32 {
        self.inter[i][j]
    }

    /// Two distinct curves are adjacent when they meet.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.inter[i][j] >= 1
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Whether a permutation of the curves preserves all intersection numbers.
    pub fn preserves_incidence(&self, perm: &[usize]) -> bool {
        perm.len() == self.len()
            && (0..self.len()).all(|i| (0..self.len()).all(|j| self.inter[perm[i]][perm[j]] == self.inter[i][j]))
    }

    /// Whether the given curves form a cycle under adjacency, in the given order.
    pub fn is_cycle(&self, ids: &[usize]) -> bool {
        let k = ids.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                let d = (a + k - b) % k;
                let expect = d == 1 || d == k - 1;
                self.adjacent(ids[a], ids[b]) == expect || a == b
            })
        })
    }

    /// Indices of the labels `E1, E2, E3, F1, F2, F3` of the original
    /// hexagon, for `n ∈ {3, 5, 6}`.
    pub fn hexagon(&self) -> Result<[usize; 6]> {
        if self.n == 7 {
            return Err(Error::Unsupported("no distinguished hexagon on the 56-curve configuration".into()));
        }
        let mut out = [0; 6];
        for (k, l) in super::HEX_LABELS.iter().enumerate() {
            out[k] = self.index_of(l).unwrap();
        }
        Ok(out)
    }

    /// The anticanonical involution `C ↦ −K − C` on the 56 curves (`n = 7`).
    pub fn geiser_involution(&self) -> Result<Vec<usize>> {
        if self.n != 7 {
            return Err(Error::Unsupported("the Geiser involution lives on the 56-curve configuration".into()));
        }
        let k = CurveClass::anticanonical(7);
        Ok(self.classes.iter().map(|c| self.index_of_class(&k.sub(c)).unwrap()).collect())
    }

    /// Graphviz-style dump: one `a -- b` line per meeting pair, then one
    /// `# action u: a -> b` line per moved curve of each listed action.
    pub fn dump(&self, actions: &[(String, Vec<usize>)]) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.adjacent(i, j) {
                    s.push_str(&format!("{} -- {}\n", self.labels[i], self.labels[j]));
                }
            }
        }
        for (name, perm) in actions {
            for (i, &j) in perm.iter().enumerate() {
                if i != j {
                    s.push_str(&format!("# action {}: {} -> {}\n", name, self.labels[i], self.labels[j]));
                }
            }
        }
        s
    }
}

/// The Geiser pairing on the 56 curves as label data: `E_k ↔ F_k` and
/// `C_ij ↔ L_ij`.
pub fn geiser_pairing_labels() -> Vec<(String, String)> {
    let mut v = Vec::new();
    for k in 1..=7 {
        v.push((format!("E{}", k), format!("F{}", k)));
    }
    for i in 1..=7 {
        for j in (i + 1)..=7 {
            v.push((format!("C{}{}", i, j), format!("L{}{}", i, j)));
        }
    }
    v
}

/// An isometry of the lattice given by the images of `H` and the `eᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub img_h: CurveClass,
    pub img_e: Vec<CurveClass>,
}

impl LatticeMap {
    pub fn identity(n: usize) -> LatticeMap {
        LatticeMap { img_h: CurveClass::hyperplane(n), img_e: (0..n).map(|i| CurveClass::exceptional(n, i)).collect() }
    }

    pub fn apply(&self, c: &CurveClass) -> CurveClass {
        let mut out = self.img_h.scale(c.d);
        for (i, &mi) in c.m.iter().enumerate() {
            // c contains −mᵢ·eᵢ and eᵢ is the class (0; −1 at i)
            out = out.add(&self.img_e[i].scale(-mi));
        }
        out
    }

    /// The map determined by the images of `E1, E2, E3, F3` and of the
    /// further exceptional curves `E4, …, En` (`H = F3 + E1 + E2`).
    pub fn from_images(config: &CurveConfig, images: &HashMap<String, usize>) -> Result<LatticeMap> {
        let n = config.n();
        let get = |l: &str| -> Result<CurveClass> {
            let j = images.get(l).ok_or_else(|| Error::InconsistentAction(format!("no image given for {}", l)))?;
            Ok(config.class(*j).clone())
        };
        let img_e: Vec<CurveClass> = (1..=n).map(|i| get(&format!("E{}", i))).collect::<Result<_>>()?;
        let f3 = if n == 7 { get("L12")? } else { get("F3")? };
        let img_h = f3.add(&img_e[0]).add(&img_e[1]);
        Ok(LatticeMap { img_h, img_e })
    }

    /// The induced permutation of the (−1)-curves, checking that every
    /// given image is reproduced and that incidence is preserved.
    pub fn to_permutation(&self, config: &CurveConfig, images: &HashMap<String, usize>) -> Result<Vec<usize>> {
        let mut perm = Vec::with_capacity(config.len());
        for i in 0..config.len() {
            let img = self.apply(config.class(i));
            let j = config.index_of_class(&img).ok_or_else(|| {
                Error::InconsistentAction(format!("{} is sent to {}, which is not a (-1)-class", config.label(i), img))
            })?;
            perm.push(j);
        }
        for (l, &j) in images {
            let i = config.index_of(l).ok_or_else(|| Error::InconsistentAction(format!("unknown label {}", l)))?;
            if perm[i] != j {
                return Err(Error::InconsistentAction(format!(
                    "{} must go to {} but incidence forces {}",
                    l,
                    config.label(j),
                    config.label(perm[i])
                )));
            }
        }
        if !config.preserves_incidence(&perm) {
            return Err(Error::InconsistentAction("adjacency is not preserved".into()));
        }
        Ok(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(CurveConfig::enumerate(3).unwrap().len(), 6);
        assert_eq!(CurveConfig::enumerate(5).unwrap().len(), 16);
        assert_eq!(CurveConfig::enumerate(6).unwrap().len(), 27);
        assert_eq!(CurveConfig::enumerate(7).unwrap().len(), 56);
        assert!(CurveConfig::enumerate(4).is_err());
    }

    #[test]
    fn labels_are_bijective_and_ordered() {
        let c3 = CurveConfig::enumerate(3).unwrap();
        assert_eq!(c3.labels(), &["E1", "E2", "E3", "F1", "F2", "F3"]);
        let c5 = CurveConfig::enumerate(5).unwrap();
        let expect5 = [
            "E1", "E2", "E3", "E4", "E5", "F1", "F2", "F3", "L14", "L15", "L24", "L25", "L34", "L35", "L45", "C",
        ];
        assert_eq!(c5.labels(), &expect5);
        let c6 = CurveConfig::enumerate(6).unwrap();
        let mut l6: Vec<String> = c6.labels().to_vec();
        l6.sort();
        l6.dedup();
        assert_eq!(l6.len(), 27);
        for l in ["C1", "C6", "L45", "L46", "L56", "L16", "F2"] {
            assert!(c6.index_of(l).is_some(), "{}", l);
        }
        assert_eq!(c6.class_of("F1").unwrap(), &CurveClass::line(6, 1, 2));
        assert_eq!(c6.class_of("C4").unwrap(), &CurveClass::new(2, vec![1, 1, 1, 0, 1, 1]));
    }

    #[test]
    fn intersection_examples() {
        let e1 = CurveClass::exceptional(3, 0);
        assert_eq!(intersection(&e1, &e1).unwrap(), -1);
        assert_eq!(intersection(&e1, &CurveClass::line(3, 1, 2)).unwrap(), 0);
        assert_eq!(intersection(&e1, &CurveClass::line(3, 0, 1)).unwrap(), 1);
        assert!(intersection(&e1, &CurveClass::exceptional(5, 0)).is_err());
    }

    #[test]
    fn regularity() {
        let c3 = CurveConfig::enumerate(3).unwrap();
        assert!((0..6).all(|i| c3.neighbors(i).len() == 2));
        let c5 = CurveConfig::enumerate(5).unwrap();
        assert!((0..16).all(|i| c5.neighbors(i).len() == 5));
        let c6 = CurveConfig::enumerate(6).unwrap();
        assert!((0..27).all(|i| c6.neighbors(i).len() == 10));
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(c3.adjacent(i, j), crate::curveconfig::hex_adjacent(i, j));
            }
        }
    }

    #[test]
    fn new_hexagons() {
        let c6 = CurveConfig::enumerate(6).unwrap();
        let ids: Vec<usize> = ["C4", "L45", "C5", "L56", "C6", "L46"].iter().map(|l| c6.index_of(l).unwrap()).collect();
        assert!(c6.is_cycle(&ids));
        for c in ["C1", "C2", "C3"] {
            let j = c6.index_of(c).unwrap();
            assert!(ids.iter().all(|&i| c6.intersect(i, j) == 0));
        }
        let c5 = CurveConfig::enumerate(5).unwrap();
        let ids: Vec<usize> =
            ["L35", "L14", "L25", "L34", "L15", "L24"].iter().map(|l| c5.index_of(l).unwrap()).collect();
        assert!(c5.is_cycle(&ids));
        for c in ["C", "L45"] {
            let j = c5.index_of(c).unwrap();
            assert!(ids.iter().all(|&i| c5.intersect(i, j) == 0));
        }
    }

    #[test]
    fn geiser_pairing_matches_anticanonical_involution() {
        let c7 = CurveConfig::enumerate(7).unwrap();
        let inv = c7.geiser_involution().unwrap();
        for (a, b) in geiser_pairing_labels() {
            let i = c7.index_of(&a).unwrap();
            let j = c7.index_of(&b).unwrap();
            assert_eq!(inv[i], j);
            assert_eq!(inv[j], i);
        }
        assert_eq!(geiser_pairing_labels().len(), 28);
        assert!(c7.preserves_incidence(&inv));
    }

    #[test]
    fn dump_format() {
        let c3 = CurveConfig::enumerate(3).unwrap();
        let s = c3.dump(&[("h".into(), vec![3, 4, 5, 0, 1, 2])]);
        assert_eq!(s.lines().filter(|l| l.contains(" -- ")).count(), 6);
        assert!(s.contains("# action h: E1 -> F1"));
    }
}
