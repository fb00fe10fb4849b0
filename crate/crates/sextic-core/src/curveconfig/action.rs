//! Galois actions on curve configurations: the hexagon action of a tower,
//! invariant Picard ranks, the finite groups acting on a link, and the
//! induced action on the new hexagon after a link at a point of degree 2 or 3.

use super::hexagon::D6;
use super::lattice::{CurveClass, CurveConfig, LatticeMap};
use crate::error::{Error, Result};
use crate::fieldtower::{GType, GaloisTower};
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::HashMap;

/// Generator permutations of the curves of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCurveAction {
    pub n: usize,
    pub gens: Vec<(String, Vec<usize>)>,
}

impl GaloisCurveAction {
    pub fn generator(&self, name: &str) -> Option<&[usize]> {
        self.gens.iter().find(|(n, _)| n == name).map(|(_, p)| p.as_slice())
    }

    /// Every generator preserves intersection numbers.
    pub fn preserves_adjacency(&self, config: &CurveConfig) -> bool {
        self.gens.iter().all(|(_, p)| config.preserves_incidence(p))
    }

    /// Permutation of a word of single-letter generator names, applied
    /// right to left.
    pub fn word_perm(&self, word: &str) -> Result<Vec<usize>> {
        let len = self.gens.first().map(|g| g.1.len()).unwrap_or(0);
        let mut out: Vec<usize> = (0..len).collect();
        for c in word.chars().rev() {
            let p = self.generator(&c.to_string()).ok_or_else(|| Error::UnknownElement(c.to_string()))?;
            out = out.iter().map(|&i| p[i]).collect();
        }
        Ok(out)
    }

    /// Whether every relator acts trivially.
    pub fn respects(&self, relators: &[&str]) -> Result<bool> {
        for r in relators {
            let p = self.word_perm(r)?;
            if p.iter().enumerate().any(|(i, &j)| i != j) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Relators of the standard presentation of each group type.
pub fn presentation_relators(gtype: GType) -> Vec<&'static str> {
    match gtype {
        GType::Z6 => vec!["ggg", "hh", "ghggh"],
        GType::S3 => vec!["ggg", "ff", "fgfg"],
        GType::D6 => vec!["ggg", "hh", "ff", "ghggh", "hfhf", "fgfg"],
    }
}

/// The action of the tower's generators on the six hexagon sides.
pub fn hexagon_action(tower: &GaloisTower) -> GaloisCurveAction {
    let gens = tower
        .generators()
        .into_iter()
        .map(|(c, id)| (c.to_string(), tower.d6(id).label_perm().to_vec()))
        .collect();
    GaloisCurveAction { n: 3, gens }
}

/// The lattice isometry of the plane blown up in three points induced by a
/// hexagon symmetry.
pub fn hexagon_lattice_map(d: &D6) -> LatticeMap {
    let config = CurveConfig::enumerate(3).unwrap();
    let images: HashMap<String, usize> =
        (0..6).map(|l| (super::HEX_LABELS[l].to_string(), d.apply_label(l))).collect();
    LatticeMap::from_images(&config, &images).unwrap()
}

fn matrix_of(map: &LatticeMap) -> Vec<Vec<i64>> {
    let n = map.img_e.len();
    let mut basis = vec![CurveClass::hyperplane(n)];
    basis.extend((0..n).map(|i| CurveClass::exceptional(n, i)));
    // column k holds the coordinates of the image of basis vector k in the
    // basis (H, e1, …, en); eᵢ has coordinate −mᵢ
    let cols: Vec<Vec<i64>> = basis
        .iter()
        .map(|b| {
            let c = map.apply(b);
            let mut v = vec![c.d as i64];
            v.extend(c.m.iter().map(|&x| -(x as i64)));
            v
        })
        .collect();
    (0..=n).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rational64>> =
        rows.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c];
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c] / piv;
                for k in 0..ncols {
                    let t = m[r][k] * f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of the sublattice of `Z⁴ = ⟨H, e1, e2, e3⟩` fixed by the given
/// hexagon symmetries.
pub fn invariant_picard_rank(action: &[D6]) -> usize {
    let mut rows = Vec::new();
    for d in action {
        let m = matrix_of(&hexagon_lattice_map(d));
        for (i, row) in m.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= 1;
            rows.push(r);
        }
    }
    4 - rank(&rows)
}

/// `invariant_picard_rank` for a hexagon action given by label permutations.
pub fn invariant_picard_rank_of(action: &GaloisCurveAction) -> Result<usize> {
    let ds = action
        .gens
        .iter()
        .map(|(n, p)| D6::from_label_perm(p).ok_or_else(|| Error::InconsistentAction(format!("{} is not a hexagon symmetry", n))))
        .collect::<Result<Vec<_>>>()?;
    Ok(invariant_picard_rank(&ds))
}

/// The Galois group of the splitting field of a point, as a permutation
/// group on its geometric components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointGroup {
    Z2,
    Z3,
    S3,
}

impl PointGroup {
    pub fn degree(&self) -> usize {
        match self {
            PointGroup::Z2 => 2,
            _ => 3,
        }
    }

    pub fn perms(&self) -> Vec<Vec<usize>> {
        match self {
            PointGroup::Z2 => vec![vec![0, 1], vec![1, 0]],
            PointGroup::Z3 => vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            PointGroup::S3 => vec![
                vec![0, 1, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![0, 2, 1],
                vec![2, 1, 0],
                vec![1, 0, 2],
            ],
        }
    }
}

/// `true` for odd permutations.
pub fn perm_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// How the splitting field `E` of the point sits relative to `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointPattern {
    /// `E ⊂ F`; the subgroup of `G` stabilizing one geometric component.
    Contained { stabilizer: Vec<D6> },
    /// `E ∩ F = F^U` quadratic, with `Gal(E/k) ≅ S3`.
    Quadratic { fixing: Vec<D6> },
    /// `E ∩ F = k`.
    Trivial { egroup: PointGroup },
}

/// An element of `Gal(FE/k)` as a pair: its image in `G ⊂ D6` and its
/// restriction to `E` as a permutation of the components (identity when
/// `E ⊂ F`), together with the resulting permutation of the components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkElement {
    pub f: D6,
    pub e: Vec<usize>,
    pub points: Vec<usize>,
}

impl LinkElement {
    pub fn compose(&self, o: &LinkElement) -> LinkElement {
        LinkElement {
            f: self.f.compose(&o.f),
            e: o.e.iter().map(|&i| self.e[i]).collect(),
            points: o.points.iter().map(|&i| self.points[i]).collect(),
        }
    }

    pub fn name(&self) -> String {
        let e: Vec<String> = self.e.iter().map(|x| (x + 1).to_string()).collect();
        format!("({}, [{}])", self.f.describe(), e.join(""))
    }
}

/// Close a set of hexagon symmetries under composition.
pub fn d6_closure(gens: &[D6]) -> Vec<D6> {
    let mut out = vec![D6::identity()];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let x = out[i].compose(g);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// The finite group `Gal(FE/k)` acting on the hexagon and on the components
/// of a point of degree `d`, enumerated as pairs subject to compatibility on
/// `E ∩ F`.
pub fn link_group(g_image: &[D6], d: usize, pattern: &PointPattern) -> Result<Vec<LinkElement>> {
    let mut g: Vec<D6> = g_image.to_vec();
    g.sort();
    g.dedup();
    if d6_closure(&g) != g {
        return Err(Error::Precondition("the image of G is not a subgroup of D6".into()));
    }
    let id_e: Vec<usize> = (0..d).collect();
    let mut out = Vec::new();
    match pattern {
        PointPattern::Contained { stabilizer } => {
            let mut y = stabilizer.clone();
            y.sort();
            y.dedup();
            if d6_closure(&y) != y || !y.iter().all(|x| g.contains(x)) || g.len() != d * y.len() {
                return Err(Error::Precondition(format!("stabilizer must be a subgroup of index {}", d)));
            }
            let mut cosets: Vec<Vec<D6>> = Vec::new();
            for x in &g {
                let mut c: Vec<D6> = y.iter().map(|s| x.compose(s)).collect();
                c.sort();
                if !cosets.contains(&c) {
                    cosets.push(c);
                }
            }
            // put the stabilizer's own coset first
            let pos = cosets.iter().position(|c| c.contains(&D6::identity())).unwrap();
            cosets.swap(0, pos);
            for x in &g {
                let points = cosets
                    .iter()
                    .map(|c| {
                        let img = x.compose(&c[0]);
                        cosets.iter().position(|c2| c2.contains(&img)).unwrap()
                    })
                    .collect();
                out.push(LinkElement { f: *x, e: id_e.clone(), points });
            }
        }
        PointPattern::Quadratic { fixing } => {
            if d != 3 {
                return Err(Error::Precondition("a quadratic intersection needs a point of degree 3".into()));
            }
            let mut u = fixing.clone();
            u.sort();
            u.dedup();
            if d6_closure(&u) != u || !u.iter().all(|x| g.contains(x)) || g.len() != 2 * u.len() {
                return Err(Error::Precondition("U must be a subgroup of index 2 in G".into()));
            }
            for x in &g {
                for e in PointGroup::S3.perms() {
                    if u.contains(x) != perm_is_odd(&e) {
                        out.push(LinkElement { f: *x, points: e.clone(), e });
                    }
                }
            }
        }
        PointPattern::Trivial { egroup } => {
            if egroup.degree() != d {
                return Err(Error::Precondition(format!("a point of degree {} needs a Galois group on {} components", d, d)));
            }
            for x in &g {
                for e in egroup.perms() {
                    out.push(LinkElement { f: *x, points: e.clone(), e });
                }
            }
        }
    }
    Ok(out)
}

/// Labels in the configuration of the new hexagon `Σ′`, listed in the order
/// `E1′, E2′, E3′, F1′, F2′, F3′`.
pub fn sigma_prime_labels(d: usize) -> Result<[&'static str; 6]> {
    match d {
        2 => Ok(["L14", "L24", "L34", "L15", "L25", "L35"]),
        3 => Ok(["C4", "C5", "C6", "L56", "L46", "L45"]),
        _ => Err(Error::Unsupported(format!("links at points of degree {}", d))),
    }
}

/// Curves contracted by the two contractions of a link.
pub fn contracted_labels(d: usize) -> Result<(Vec<&'static str>, Vec<&'static str>)> {
    match d {
        2 => Ok((vec!["E4", "E5"], vec!["C", "L45"])),
        3 => Ok((vec!["E4", "E5", "E6"], vec!["C1", "C2", "C3"])),
        _ => Err(Error::Unsupported(format!("links at points of degree {}", d))),
    }
}

/// The induced action on the curves of the blown-up surface and on `Σ′`.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub d: usize,
    pub config: CurveConfig,
    /// Permutations of all curves of the blown-up surface.
    pub full: Vec<(String, Vec<usize>)>,
    /// The action on `Σ′` in the labeling of [`sigma_prime_labels`].
    pub sigma_prime: Vec<(String, D6)>,
    /// Indices of the input elements that act trivially on `Σ′`.
    pub kernel: Vec<usize>,
}

impl InducedAction {
    pub fn as_curve_action(&self) -> GaloisCurveAction {
        GaloisCurveAction {
            n: 3,
            gens: self.sigma_prime.iter().map(|(n, d)| (n.clone(), d.label_perm().to_vec())).collect(),
        }
    }
}

/// Extend each element's action on the hexagon and on the point components
/// to all curves of the blown-up surface through the lattice, restrict it to
/// `Σ′` and collect the kernel.
///
/// Each entry is `(name, hexagon symmetry, permutation of the components)`.
pub fn induced_sigma_prime_action(d: usize, elems: &[(String, D6, Vec<usize>)]) -> Result<InducedAction> {
    let labels = sigma_prime_labels(d)?;
    let config = CurveConfig::enumerate(3 + d)?;
    let sp: Vec<usize> = labels.iter().map(|l| config.index_of(l).unwrap()).collect();
    let (_, contracted) = contracted_labels(d)?;
    let contracted: Vec<usize> = contracted.iter().map(|l| config.index_of(l).unwrap()).collect();
    let mut full = Vec::new();
    let mut sigma_prime = Vec::new();
    let mut kernel = Vec::new();
    for (k, (name, hex, pts)) in elems.iter().enumerate() {
        if pts.len() != d {
            return Err(Error::InconsistentAction(format!("{} permutes {} components, expected {}", name, pts.len(), d)));
        }
        let mut images = HashMap::new();
        for l in 0..6 {
            images.insert(super::HEX_LABELS[l].to_string(), config.index_of(super::HEX_LABELS[hex.apply_label(l)]).unwrap());
        }
        for (i, &j) in pts.iter().enumerate() {
            images.insert(format!("E{}", 4 + i), config.index_of(&format!("E{}", 4 + j)).unwrap());
        }
        let map = LatticeMap::from_images(&config, &images)?;
        let perm = map.to_permutation(&config, &images)?;
        let mut cc: Vec<usize> = contracted.iter().map(|&i| perm[i]).collect();
        cc.sort();
        let mut c0 = contracted.clone();
        c0.sort();
        if cc != c0 {
            return Err(Error::InconsistentAction(format!("{} does not preserve the contracted curves", name)));
        }
        let lp: Vec<usize> = sp
            .iter()
            .map(|&i| sp.iter().position(|&j| j == perm[i]))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InconsistentAction(format!("{} does not preserve the new hexagon", name)))?;
        let dd = D6::from_label_perm(&lp)
            .ok_or_else(|| Error::InconsistentAction(format!("{} does not act by a hexagon symmetry", name)))?;
        if dd.is_identity() {
            kernel.push(k);
        }
        full.push((name.clone(), perm));
        sigma_prime.push((name.clone(), dd));
    }
    Ok(InducedAction { d, config, full, sigma_prime, kernel })
}

/// Apply [`induced_sigma_prime_action`] to every element of a link group.
pub fn induced_action_of_group(d: usize, group: &[LinkElement]) -> Result<InducedAction> {
    let elems: Vec<(String, D6, Vec<usize>)> = group.iter().map(|x| (x.name(), x.f, x.points.clone())).collect();
    induced_sigma_prime_action(d, &elems)
}

/// The isomorphism type of the group of hexagon symmetries acting on `Σ′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImageType {
    /// Order 6, cyclic: the rotations of order 3 and the central symmetry.
    Z6,
    /// Order 6, non-cyclic, containing reflections that swap the triangles.
    S3,
    D6,
    /// Any other subgroup; the new surface then has Picard rank ≥ 2.
    Other(usize),
}

/// Classify a subgroup of D6.
pub fn image_type(img: &[D6]) -> ImageType {
    let mut v = img.to_vec();
    v.sort();
    v.dedup();
    match v.len() {
        12 => ImageType::D6,
        6 if v.iter().any(|x| x.order() == 6) => ImageType::Z6,
        6 if v.iter().all(|x| x.order() != 6) && v.iter().any(|x| x.inv) && v.iter().any(|x| x.order() == 3) => {
            ImageType::S3
        }
        k => ImageType::Other(k),
    }
}

/// The kernel and the new group predicted by the case analysis of links at
/// points of degree 2 and 3 (standard embedding, `s = h∘f`). `None` when
/// the case lies outside that analysis.
pub fn predicted_kernel(gtype: GType, d: usize, pattern: &PointPattern) -> Option<(Vec<D6>, ImageType)> {
    let theta = D6::theta();
    let iota = D6::iota();
    let s = D6::iota().compose(&D6::sigma());
    let g_type_image = match gtype {
        GType::Z6 => ImageType::Z6,
        GType::S3 => ImageType::S3,
        GType::D6 => ImageType::D6,
    };
    match (d, pattern) {
        (2, PointPattern::Contained { stabilizer }) if gtype != GType::S3 && !stabilizer.contains(&iota) => {
            Some((vec![D6::identity()], g_type_image))
        }
        (2, PointPattern::Trivial { egroup: PointGroup::Z2 }) if gtype != GType::S3 => {
            Some((d6_closure(&[iota]), g_type_image))
        }
        (3, PointPattern::Contained { .. }) => Some((vec![D6::identity()], g_type_image)),
        (3, PointPattern::Quadratic { fixing }) => match gtype {
            GType::Z6 | GType::S3 => Some((d6_closure(&[theta]), ImageType::S3)),
            GType::D6 => {
                let mut u = fixing.clone();
                u.sort();
                if u == d6_closure(&[theta, s]) {
                    Some((d6_closure(&[theta, s]), ImageType::S3))
                } else {
                    Some((d6_closure(&[theta]), ImageType::D6))
                }
            }
        },
        (3, PointPattern::Trivial { egroup }) => {
            let kernel = match gtype {
                GType::D6 => d6_closure(&[theta, s]),
                _ => d6_closure(&[theta]),
            };
            let img = match egroup {
                PointGroup::Z3 => ImageType::Z6,
                PointGroup::S3 => ImageType::D6,
                PointGroup::Z2 => return None,
            };
            Some((kernel, img))
        }
        _ => None,
    }
}

/// The image of `G` in D6 under the standard embedding.
pub fn standard_image(gtype: GType) -> Vec<D6> {
    match gtype {
        GType::Z6 => d6_closure(&[D6::theta(), D6::iota()]),
        GType::S3 => d6_closure(&[D6::theta(), D6::sigma()]),
        GType::D6 => D6::all(),
    }
}

/// All intersection patterns of points of degree `d` for the standard
/// embedding of `gtype`, each with a short description.
pub fn all_patterns(gtype: GType, d: usize) -> Vec<(String, PointPattern)> {
    let g = standard_image(gtype);
    let subgroups = subgroups_of(&g);
    let mut out = Vec::new();
    for y in subgroups.iter().filter(|y| y.len() * d == g.len()) {
        out.push((format!("contained, stabilizer of order {}", y.len()), PointPattern::Contained { stabilizer: y.clone() }));
    }
    if d == 3 {
        for u in subgroups.iter().filter(|u| u.len() * 2 == g.len()) {
            let gens: Vec<String> = u.iter().map(|x| x.describe()).collect();
            out.push((format!("quadratic, U = {{{}}}", gens.join(",")), PointPattern::Quadratic { fixing: u.clone() }));
        }
        out.push(("trivial, Z/3".into(), PointPattern::Trivial { egroup: PointGroup::Z3 }));
        out.push(("trivial, S3".into(), PointPattern::Trivial { egroup: PointGroup::S3 }));
    } else {
        out.push(("trivial, Z/2".into(), PointPattern::Trivial { egroup: PointGroup::Z2 }));
    }
    out
}

/// All subgroups of a subgroup of D6.
pub fn subgroups_of(g: &[D6]) -> Vec<Vec<D6>> {
    let mut out: Vec<Vec<D6>> = Vec::new();
    for a in g {
        for b in g {
            let s = d6_closure(&[*a, *b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort_by_key(|s| s.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image_of(action: &GaloisCurveAction) -> Vec<D6> {
        let gens: Vec<D6> = action.gens.iter().map(|(_, p)| D6::from_label_perm(p).unwrap()).collect();
        d6_closure(&gens)
    }

    #[test]
    fn hexagon_actions_of_standard_towers() {
        let z6 = hexagon_action(&GaloisTower::standard_z6());
        assert_eq!(image_of(&z6), d6_closure(&[D6::theta(), D6::iota()]));
        assert_eq!(z6.generator("g").unwrap(), &[1, 2, 0, 4, 5, 3]);
        assert_eq!(z6.generator("h").unwrap(), &[3, 4, 5, 0, 1, 2]);
        let s3 = hexagon_action(&GaloisTower::standard_s3());
        assert_eq!(image_of(&s3), d6_closure(&[D6::theta(), D6::sigma()]));
        assert_eq!(s3.generator("f").unwrap(), &[3, 5, 4, 0, 2, 1]);
        let d6 = hexagon_action(&GaloisTower::standard_d6());
        assert_eq!(image_of(&d6).len(), 12);
        let hex = CurveConfig::enumerate(3).unwrap();
        for (a, g) in [(z6, GType::Z6), (s3, GType::S3), (d6, GType::D6)] {
            assert!(a.preserves_adjacency(&hex));
            assert!(a.respects(&presentation_relators(g)).unwrap());
        }
    }

    #[test]
    fn picard_ranks() {
        assert_eq!(invariant_picard_rank(&[]), 4);
        assert_eq!(invariant_picard_rank(&[D6::identity()]), 4);
        assert_eq!(invariant_picard_rank(&[D6::theta()]), 2);
        assert_eq!(invariant_picard_rank(&[D6::theta(), D6::iota()]), 1);
        assert_eq!(invariant_picard_rank(&[D6::theta(), D6::sigma()]), 1);
        assert_eq!(invariant_picard_rank(&D6::all()), 1);
        assert_eq!(invariant_picard_rank_of(&hexagon_action(&GaloisTower::standard_z6())).unwrap(), 1);
    }

    /// Brute-force oracle: the invariant vectors of `H, e1, e2, e3` with
    /// entries in `-3..=3`, counted up to the rank they span.
    #[test]
    fn picard_rank_matches_brute_force_kernel() {
        for gens in [vec![D6::theta()], vec![D6::iota()], vec![D6::sigma()], vec![D6::theta(), D6::iota()]] {
            let maps: Vec<LatticeMap> = gens.iter().map(hexagon_lattice_map).collect();
            let mut fixed = Vec::new();
            for d in -3..=3 {
                for a in -3..=3 {
                    for b in -3..=3 {
                        for c in -3..=3 {
                            let v = CurveClass::new(d, vec![a, b, c]);
                            if maps.iter().all(|m| m.apply(&v) == v) {
                                let mut row = vec![d as i64];
                                row.extend([a, b, c].iter().map(|&x| x as i64));
                                fixed.push(row);
                            }
                        }
                    }
                }
            }
            assert_eq!(rank(&fixed), invariant_picard_rank(&gens), "{:?}", gens);
        }
    }

    #[test]
    fn inconsistent_inputs_are_rejected() {
        let bad = vec![("x".to_string(), D6::theta(), vec![0, 1, 1])];
        assert!(induced_sigma_prime_action(3, &bad).is_err());
        assert!(induced_sigma_prime_action(4, &[]).is_err());
    }

    fn kernel_f_parts(group: &[LinkElement], ind: &InducedAction) -> Option<Vec<D6>> {
        let mut v = Vec::new();
        for &k in &ind.kernel {
            if group[k].e.iter().enumerate().any(|(i, &j)| i != j) {
                return None;
            }
            v.push(group[k].f);
        }
        v.sort();
        Some(v)
    }

    fn new_image(ind: &InducedAction) -> Vec<D6> {
        let gens: Vec<D6> = ind.sigma_prime.iter().map(|x| x.1).collect();
        d6_closure(&gens)
    }

    #[test]
    fn three_point_s3_with_cyclic_cubic() {
        let g = standard_image(GType::S3);
        let group = link_group(&g, 3, &PointPattern::Trivial { egroup: PointGroup::Z3 }).unwrap();
        assert_eq!(group.len(), 18);
        let ind = induced_action_of_group(3, &group).unwrap();
        assert_eq!(kernel_f_parts(&group, &ind).unwrap(), d6_closure(&[D6::theta()]));
        assert_eq!(image_type(&new_image(&ind)), ImageType::Z6);
        // f swaps opposite sides and w rotates
        let f = group.iter().position(|x| x.f == D6::sigma() && x.e == vec![0, 1, 2]).unwrap();
        assert_eq!(ind.sigma_prime[f].1, D6::iota());
        let w = group.iter().position(|x| x.f.is_identity() && x.e == vec![1, 2, 0]).unwrap();
        assert_eq!(ind.sigma_prime[w].1.order(), 3);
    }

    #[test]
    fn two_point_z6_contained_has_trivial_kernel() {
        let g = standard_image(GType::Z6);
        let y = d6_closure(&[D6::theta()]);
        let group = link_group(&g, 2, &PointPattern::Contained { stabilizer: y }).unwrap();
        let ind = induced_action_of_group(2, &group).unwrap();
        assert_eq!(ind.kernel.len(), 1);
        let theta = group.iter().position(|x| x.f == D6::theta()).unwrap();
        assert_eq!(ind.sigma_prime[theta].1, D6::theta());
        let h = group.iter().position(|x| x.f == D6::iota()).unwrap();
        assert_eq!(ind.sigma_prime[h].1, D6::iota());
    }

    #[test]
    fn three_point_d6_trivial_kernel_is_g_s() {
        let g = standard_image(GType::D6);
        let s = D6::iota().compose(&D6::sigma());
        for eg in [PointGroup::Z3, PointGroup::S3] {
            let group = link_group(&g, 3, &PointPattern::Trivial { egroup: eg }).unwrap();
            let ind = induced_action_of_group(3, &group).unwrap();
            assert_eq!(kernel_f_parts(&group, &ind).unwrap(), d6_closure(&[D6::theta(), s]));
        }
    }

    #[test]
    fn exhaustive_agreement_with_case_analysis() {
        let mut checked = 0;
        for gtype in [GType::Z6, GType::S3, GType::D6] {
            for d in [2, 3] {
                for (desc, pat) in all_patterns(gtype, d) {
                    let group = link_group(&standard_image(gtype), d, &pat).unwrap();
                    let ind = induced_action_of_group(d, &group).unwrap();
                    let full = CurveConfig::enumerate(3 + d).unwrap();
                    for (_, p) in &ind.full {
                        assert!(full.preserves_incidence(p));
                    }
                    // the induced action is a homomorphism on the link group
                    for (a, x) in group.iter().enumerate() {
                        for (b, y) in group.iter().enumerate() {
                            let xy = x.compose(y);
                            let c = group.iter().position(|z| *z == xy).unwrap();
                            assert_eq!(ind.sigma_prime[c].1, ind.sigma_prime[a].1.compose(&ind.sigma_prime[b].1));
                        }
                    }
                    if let Some((kernel, img)) = predicted_kernel(gtype, d, &pat) {
                        assert_eq!(kernel_f_parts(&group, &ind), Some(kernel), "{} d={} {}", gtype, d, desc);
                        assert_eq!(image_type(&new_image(&ind)), img, "{} d={} {}", gtype, d, desc);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked >= 16, "{}", checked);
    }
}
