//! Exact arithmetic in rational function fields over Q(ω) with explicit finite
//! Galois actions: norms, fixed fields, composites with radical extensions and
//! a three-valued norm-class oracle.

pub mod classfact;
pub mod ext;
pub mod gcd;
pub mod modgcd;
pub mod parse;
pub mod poly;
pub mod qw;
pub mod ratfn;
pub mod tower;

pub use classfact::{hilbert90_witness, norm_class, ClassFact, NormClass, Provenance, Verdict};
pub use ext::{composite_group, CompositeElem, CompositeGroup, EGroup, EPart, ExtElem, ExtKind, ExtensionDescriptor, Intersection, Radical};
pub use parse::parse_ratfn;
pub use poly::Poly;
pub use qw::Qw;
pub use ratfn::RatFn;
pub use tower::{ElemId, GType, GaloisTower, VarAut};
