//! The hexagon of (−1)-curves on a sextic del Pezzo surface and its symmetry
//! group D6.
//!
//! Labels are indexed `0..6` as `E1, E2, E3, F1, F2, F3`. `E_i` meets `F_j`
//! exactly when `i ≠ j`; the cyclic order is `E1 F2 E3 F1 E2 F3`.

use std::fmt;

pub const HEX_LABELS: [&str; 6] = ["E1", "E2", "E3", "F1", "F2", "F3"];

/// Whether two hexagon labels are adjacent sides.
pub fn hex_adjacent(a: usize, b: usize) -> bool {
    (a < 3) != (b < 3) && a % 3 != b % 3
}

pub fn hex_label_index(name: &str) -> Option<usize> {
    HEX_LABELS.iter().position(|l| *l == name)
}

/// A symmetry of the hexagon: `E_j ↦ E_{p(j)}` when `inv` is false and
/// `E_j ↦ F_{p(j)}` when it is true; `F_j` goes to the other side type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct D6 {
    pub inv: bool,
    pub p: [u8; 3],
}

impl D6 {
    pub const fn identity() -> D6 {
        D6 { inv: false, p: [0, 1, 2] }
    }

    /// θ: rotation `E1 → E2 → E3`, `F1 → F2 → F3`.
    pub const fn theta() -> D6 {
        D6 { inv: false, p: [1, 2, 0] }
    }

    /// ι: central symmetry `E_i ↔ F_i`.
    pub const fn iota() -> D6 {
        D6 { inv: true, p: [0, 1, 2] }
    }

    /// σ: reflection `E1 ↔ F1`, `E2 ↔ F3`, `E3 ↔ F2`.
    pub const fn sigma() -> D6 {
        D6 { inv: true, p: [0, 2, 1] }
    }

    /// Product `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &D6) -> D6 {
        let p = [self.p[other.p[0] as usize], self.p[other.p[1] as usize], self.p[other.p[2] as usize]];
        D6 { inv: self.inv ^ other.inv, p }
    }

    pub fn inverse(&self) -> D6 {
        let mut q = [0u8; 3];
        for j in 0..3 {
            q[self.p[j] as usize] = j as u8;
        }
        D6 { inv: self.inv, p: q }
    }

    pub fn is_identity(&self) -> bool {
        *self == D6::identity()
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }

    /// Image of a hexagon label.
    pub fn apply_label(&self, l: usize) -> usize {
        let side_f = (l >= 3) ^ self.inv;
        let j = self.p[l % 3] as usize;
        if side_f {
            j + 3
        } else {
            j
        }
    }

    /// Permutation of the six labels.
    pub fn label_perm(&self) -> [usize; 6] {
        let mut out = [0; 6];
        for (l, o) in out.iter_mut().enumerate() {
            *o = self.apply_label(l);
        }
        out
    }

    /// Recover the symmetry from a label permutation, if it is one.
    pub fn from_label_perm(perm: &[usize]) -> Option<D6> {
        D6::all().into_iter().find(|d| d.label_perm()[..] == perm[..])
    }

    /// All twelve elements in a fixed order.
    pub fn all() -> Vec<D6> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut v = Vec::new();
        for inv in [false, true] {
            for p in perms {
                v.push(D6 { inv, p });
            }
        }
        v
    }

    /// Whether the symmetry maps the triangle {E1, E2, E3} to itself.
    pub fn preserves_triangles(&self) -> bool {
        !self.inv
    }

    /// Apply the conjugation action on homogeneous torus coordinates
    /// `[t0 : t1 : t2]`: `c_{p(j)} = t_j`, inverted when the side types swap.
    ///
    /// The result is returned with the same representation; callers renormalize.
    pub fn permute_torus<T: Clone>(&self, t: &[T; 3]) -> [T; 3] {
        let mut c = t.clone();
        for j in 0..3 {
            c[self.p[j] as usize] = t[j].clone();
        }
        c
    }

    /// A short description such as `rot^2` or `refl(E1|F1)`.
    pub fn describe(&self) -> String {
        if self.is_identity() {
            return "id".into();
        }
        if *self == D6::iota() {
            return "central".into();
        }
        let o = self.order();
        if o == 3 {
            return if *self == D6::theta() { "rot3".into() } else { "rot3^-1".into() };
        }
        if o == 6 {
            return format!("rot6{}", if self.inv && self.p == [1, 2, 0] { "" } else { "^-1" });
        }
        let perm = self.label_perm();
        let moved: Vec<String> =
            (0..6).filter(|&l| perm[l] > l).map(|l| format!("{}{}", HEX_LABELS[l], HEX_LABELS[perm[l]])).collect();
        format!("refl({})", moved.join(","))
    }
}

impl fmt::Display for D6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm = self.label_perm();
        let parts: Vec<String> = (0..6).map(|l| format!("{}->{}", HEX_LABELS[l], HEX_LABELS[perm[l]])).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_relations() {
        let t = D6::theta();
        let i = D6::iota();
        let s = D6::sigma();
        assert_eq!(t.order(), 3);
        assert_eq!(i.order(), 2);
        assert_eq!(s.order(), 2);
        assert_eq!(t.compose(&i), i.compose(&t));
        assert_eq!(s.compose(&t).compose(&s), t.compose(&t));
        assert_eq!(D6::all().len(), 12);
    }

    #[test]
    fn every_element_preserves_adjacency() {
        for d in D6::all() {
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(hex_adjacent(a, b), hex_adjacent(d.apply_label(a), d.apply_label(b)));
                }
            }
        }
    }

    #[test]
    fn figure_conventions() {
        assert_eq!(D6::theta().label_perm(), [1, 2, 0, 4, 5, 3]);
        assert_eq!(D6::iota().label_perm(), [3, 4, 5, 0, 1, 2]);
        assert_eq!(D6::sigma().label_perm(), [3, 5, 4, 0, 2, 1]);
        for d in D6::all() {
            for e in D6::all() {
                let lhs = d.compose(&e).label_perm();
                let rhs: Vec<usize> = (0..6).map(|l| d.apply_label(e.apply_label(l))).collect();
                assert_eq!(lhs.to_vec(), rhs);
            }
        }
    }
}
