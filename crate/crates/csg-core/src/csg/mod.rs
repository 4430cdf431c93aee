//! Crossed simplicial groups: concrete instances, the star operations
//! `φ*g` and `g*φ`, composition in unique-factorization form, and the
//! functors `V`, `L`, `λ̃` and the dualities `I`.
//!
//! A morphism `(φ, g)` stands for `φ ∘ g`. Composition of automorphisms is
//! opposite to the group law, `h ∘ g = g·h`, so the identities read
//!
//! ```text
//! (1.h) (φ∘ψ)*g = ψ*(φ*g)        (1.v) (gh)*φ = h*(g*φ)
//! (2.h) g*(φ∘ψ) = g*φ ∘ (φ*g)*ψ  (2.v) φ*(gh) = φ*g · (g*φ)*h
//! (3.h) id*g = g,  φ*e = e        (3.v) e*φ = φ,  g*id = id
//! ```
//!
//! and `(φ₂, g₂) ∘ (φ₁, g₁) = (φ₂ ∘ g₂*φ₁, g₁ · φ₁*g₂)`.

pub mod axioms;
pub mod functors;
pub mod literal;
pub mod twisted;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gpar::{self, GroupOps, ParityGroup, Perm, WreathElem};
use crate::ordmap::OrdMap;

pub use axioms::{verify_axioms, AxiomConfig, AxiomReport, Violation};
pub use functors::{canonical_parity, duality, lambda_tilde, theta, theta_by_definition, L};

/// Which crossed simplicial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Dihedral,
    Quaternionic,
    /// The sub-instance `{e, y}` of the dihedral category.
    Reflexive,
    Symmetric,
    /// `Δid≀Σ` over `(C₂, id)`.
    Hyperoctahedral,
    TwistedSymmetric(ParityGroup),
    ProductWithGroup(Box<CsgInstance>, ParityGroup),
}

/// Deliberate defects used as negative controls for the checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// In wreath families, `σ₀*` reverses blocks with even labels and keeps
    /// blocks with odd labels.
    InvertedParityBranch,
    /// The duality sends `σ_i` to `δ_i` instead of `δ_{i+1}`.
    PerturbedDualitySigma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsgInstance {
    family: Family,
    corruption: Option<Corruption>,
    wreath: Option<ParityGroup>,
}

/// An automorphism of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GElem {
    /// `x^a y^b` at level `n`; cyclic elements have `b = 0`, reflexive ones `a = 0`.
    Xy { n: usize, a: usize, b: u8 },
    Perm(Perm),
    Wreath(WreathElem<usize>),
    Pair(Box<GElem>, usize),
}

/// A morphism `φ ∘ g` with `g` an automorphism of the source of `φ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CsgMorphism {
    pub ord: OrdMap,
    pub g: GElem,
}

impl GElem {
    pub fn level(&self) -> usize {
        match self {
            GElem::Xy { n, .. } => *n,
            GElem::Perm(p) => p.level(),
            GElem::Wreath(w) => w.level(),
            GElem::Pair(g, _) => g.level(),
        }
    }
}

impl CsgMorphism {
    pub fn new(ord: OrdMap, g: GElem) -> Result<Self> {
        if ord.src() != g.level() {
            return Err(Error::Mismatch(alloc::format!(
                "group element at level {} cannot precede a map out of [{}]",
                g.level(),
                ord.src()
            )));
        }
        Ok(Self { ord, g })
    }

    pub fn src(&self) -> usize {
        self.ord.src()
    }

    pub fn dst(&self) -> usize {
        self.ord.dst()
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl CsgInstance {
    pub fn new(family: Family) -> Result<Self> {
        if let Family::ProductWithGroup(inner, _) = &family {
            if matches!(inner.family, Family::ProductWithGroup(..)) {
                // Nested products are legal mathematically but not needed; keep
                // element encodings flat.
                return Err(Error::Unsupported("nested products with groups".into()));
            }
        }
        let wreath = match &family {
            Family::Hyperoctahedral => Some(ParityGroup::c2_odd()),
            Family::TwistedSymmetric(g) => Some(g.clone()),
            _ => None,
        };
        Ok(Self { family, corruption: None, wreath })
    }

    pub fn cyclic() -> Self {
        Self::new(Family::Cyclic).expect("valid family")
    }
    pub fn dihedral() -> Self {
        Self::new(Family::Dihedral).expect("valid family")
    }
    pub fn quaternionic() -> Self {
        Self::new(Family::Quaternionic).expect("valid family")
    }
    pub fn reflexive() -> Self {
        Self::new(Family::Reflexive).expect("valid family")
    }
    pub fn symmetric() -> Self {
        Self::new(Family::Symmetric).expect("valid family")
    }
    pub fn hyperoctahedral() -> Self {
        Self::new(Family::Hyperoctahedral).expect("valid family")
    }
    pub fn twisted_symmetric(g: ParityGroup) -> Self {
        Self::new(Family::TwistedSymmetric(g)).expect("valid family")
    }
    pub fn product_with_group(inner: CsgInstance, h: ParityGroup) -> Result<Self> {
        Self::new(Family::ProductWithGroup(Box::new(inner), h))
    }

    /// Rejects families whose automorphism groups are infinite.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "cyclic" => Ok(Self::cyclic()),
            "dihedral" => Ok(Self::dihedral()),
            "quaternionic" => Ok(Self::quaternionic()),
            "reflexive" => Ok(Self::reflexive()),
            "symmetric" => Ok(Self::symmetric()),
            "hyperoctahedral" => Ok(Self::hyperoctahedral()),
            "braid" => Err(Error::Unsupported("the braid category has infinite automorphism groups".into())),
            other => Err(Error::Unsupported(alloc::format!("unknown family `{other}`"))),
        }
    }

    pub fn with_corruption(mut self, c: Corruption) -> Self {
        self.corruption = Some(c);
        self
    }

    pub fn corruption(&self) -> Option<Corruption> {
        self.corruption
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> String {
        match &self.family {
            Family::Cyclic => "cyclic".into(),
            Family::Dihedral => "dihedral".into(),
            Family::Quaternionic => "quaternionic".into(),
            Family::Reflexive => "reflexive".into(),
            Family::Symmetric => "symmetric".into(),
            Family::Hyperoctahedral => "hyperoctahedral".into(),
            Family::TwistedSymmetric(_) => "twisted-symmetric".into(),
            Family::ProductWithGroup(inner, _) => alloc::format!("{}-x-group", inner.name()),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        match &self.family {
            Family::Cyclic | Family::Dihedral | Family::Quaternionic => true,
            Family::ProductWithGroup(inner, _) => inner.is_self_dual(),
            _ => false,
        }
    }

    /// The label group of wreath families.
    pub fn labels(&self) -> Option<&ParityGroup> {
        self.wreath.as_ref()
    }

    /// Order of `x_n` (1 when the family has no `x`).
    fn x_order(&self, n: usize) -> usize {
        match self.family {
            Family::Cyclic | Family::Dihedral => n + 1,
            Family::Quaternionic => 2 * (n + 1),
            _ => 1,
        }
    }

    /// `|G_n|`.
    pub fn level_order(&self, n: usize) -> usize {
        match &self.family {
            Family::Cyclic => n + 1,
            Family::Dihedral => 2 * (n + 1),
            Family::Quaternionic => 4 * (n + 1),
            Family::Reflexive => 2,
            Family::Symmetric => factorial(n + 1),
            Family::Hyperoctahedral => (1usize << (n + 1)) * factorial(n + 1),
            Family::TwistedSymmetric(g) => g.order().pow((n + 1) as u32) * factorial(n + 1),
            Family::ProductWithGroup(inner, h) => inner.level_order(n) * h.order(),
        }
    }

    pub fn identity(&self, n: usize) -> GElem {
        match &self.family {
            Family::Cyclic | Family::Dihedral | Family::Quaternionic | Family::Reflexive => {
                GElem::Xy { n, a: 0, b: 0 }
            }
            Family::Symmetric => GElem::Perm(Perm::identity(n)),
            Family::Hyperoctahedral | Family::TwistedSymmetric(_) => {
                GElem::Wreath(gpar::wreath_identity(self.labels().expect("wreath"), n))
            }
            Family::ProductWithGroup(inner, _) => GElem::Pair(Box::new(inner.identity(n)), 0),
        }
    }

    /// `x_n`, for the families that have it.
    pub fn x(&self, n: usize) -> Result<GElem> {
        match &self.family {
            Family::Cyclic | Family::Dihedral | Family::Quaternionic => Ok(GElem::Xy { n, a: 1 % self.x_order(n), b: 0 }),
            Family::ProductWithGroup(inner, _) => Ok(GElem::Pair(Box::new(inner.x(n)?), 0)),
            _ => Err(Error::Unsupported(alloc::format!("{} has no generator x", self.name()))),
        }
    }

    /// `y_n`, for the families that have it.
    pub fn y(&self, n: usize) -> Result<GElem> {
        match &self.family {
            Family::Dihedral | Family::Quaternionic | Family::Reflexive => Ok(GElem::Xy { n, a: 0, b: 1 }),
            Family::ProductWithGroup(inner, _) => Ok(GElem::Pair(Box::new(inner.y(n)?), 0)),
            _ => Err(Error::Unsupported(alloc::format!("{} has no generator y", self.name()))),
        }
    }

    /// Checks that `g` is a well-formed element of this instance.
    pub fn check_elem(&self, g: &GElem) -> Result<()> {
        let ok = match (&self.family, g) {
            (Family::Cyclic, GElem::Xy { n, a, b }) => *a <= *n && *b == 0,
            (Family::Dihedral, GElem::Xy { n, a, b }) => *a <= *n && *b <= 1,
            (Family::Quaternionic, GElem::Xy { n, a, b }) => *a < 2 * (n + 1) && *b <= 1,
            (Family::Reflexive, GElem::Xy { a, b, .. }) => *a == 0 && *b <= 1,
            (Family::Symmetric, GElem::Perm(_)) => true,
            (Family::Hyperoctahedral | Family::TwistedSymmetric(_), GElem::Wreath(w)) => {
                let k = self.labels().expect("wreath").order();
                w.labels.iter().all(|&l| l < k)
            }
            (Family::ProductWithGroup(inner, h), GElem::Pair(g, k)) => {
                inner.check_elem(g)?;
                *k < h.order()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(alloc::format!("{g:?} is not an element of {}", self.name())))
        }
    }

    pub fn mul(&self, g: &GElem, h: &GElem) -> GElem {
        match (&self.family, g, h) {
            (Family::ProductWithGroup(inner, grp), GElem::Pair(g1, k1), GElem::Pair(g2, k2)) => {
                GElem::Pair(Box::new(inner.mul(g1, g2)), grp.mul_idx(*k1, *k2))
            }
            (_, GElem::Xy { n, a, b }, GElem::Xy { a: c, b: d, .. }) => {
                let n = *n;
                let xo = self.x_order(n);
                // x^a y^b x^c y^d = x^{a ± c} y^{b+d}
                let mut e = if *b == 0 { (a + c) % xo } else { (a + xo - c) % xo };
                let mut f = b + d;
                if f == 2 {
                    f = 0;
                    if self.family == Family::Quaternionic {
                        e = (e + n + 1) % xo;
                    }
                }
                GElem::Xy { n, a: e, b: f }
            }
            (_, GElem::Perm(p), GElem::Perm(q)) => GElem::Perm(p.compose(q)),
            (_, GElem::Wreath(p), GElem::Wreath(q)) => {
                GElem::Wreath(gpar::wreath_mul_unchecked(self.labels().expect("wreath"), p, q))
            }
            _ => panic!("mul: elements from different families"),
        }
    }

    pub fn inv(&self, g: &GElem) -> GElem {
        match (&self.family, g) {
            (Family::ProductWithGroup(inner, grp), GElem::Pair(g1, k)) => {
                GElem::Pair(Box::new(inner.inv(g1)), grp.inv(k))
            }
            (_, GElem::Xy { n, a, b }) => {
                let xo = self.x_order(*n);
                match (b, &self.family) {
                    (0, _) => GElem::Xy { n: *n, a: (xo - a) % xo, b: 0 },
                    (_, Family::Quaternionic) => GElem::Xy { n: *n, a: (a + n + 1) % xo, b: 1 },
                    _ => g.clone(),
                }
            }
            (_, GElem::Perm(p)) => GElem::Perm(p.inverse()),
            (_, GElem::Wreath(w)) => GElem::Wreath(gpar::wreath_inverse(self.labels().expect("wreath"), w)),
            _ => unreachable!(),
        }
    }

    /// `V_n(g) = θ_g`.
    pub fn theta(&self, g: &GElem) -> Perm {
        match g {
            GElem::Xy { n, a, b } => {
                let c = Perm::cycle(*n);
                let mut p = Perm::identity(*n);
                for _ in 0..(a % (n + 1)) {
                    p = p.compose(&c);
                }
                if *b == 1 {
                    p = p.compose(&Perm::reversal(*n));
                }
                p
            }
            GElem::Perm(p) => p.clone(),
            GElem::Wreath(w) => w.perm.clone(),
            GElem::Pair(g, _) => self.inner().expect("pair").theta(g),
        }
    }

    fn inner(&self) -> Option<&CsgInstance> {
        match &self.family {
            Family::ProductWithGroup(inner, _) => Some(inner),
            _ => None,
        }
    }

    /// `g*φ`. Every shipped family moves fibers along `θ_g`.
    pub fn star_map(&self, g: &GElem, phi: &OrdMap) -> Result<OrdMap> {
        if g.level() != phi.dst() {
            return Err(Error::Mismatch(alloc::format!(
                "g at level {} cannot act on a map into [{}]",
                g.level(),
                phi.dst()
            )));
        }
        Ok(self.star_map_unchecked(g, phi))
    }

    pub(crate) fn star_map_unchecked(&self, g: &GElem, phi: &OrdMap) -> OrdMap {
        match g {
            GElem::Xy { b: 0, a: 0, .. } => phi.clone(),
            GElem::Perm(p) => twisted::star_map(p, phi),
            GElem::Wreath(w) => twisted::star_map(&w.perm, phi),
            _ => twisted::star_map(&self.theta(g), phi),
        }
    }

    /// `φ*g`.
    pub fn star_elem(&self, phi: &OrdMap, g: &GElem) -> Result<GElem> {
        if g.level() != phi.dst() {
            return Err(Error::Mismatch(alloc::format!(
                "g at level {} cannot be pulled back along a map into [{}]",
                g.level(),
                phi.dst()
            )));
        }
        Ok(self.star_elem_unchecked(phi, g))
    }

    pub(crate) fn star_elem_unchecked(&self, phi: &OrdMap, g: &GElem) -> GElem {
        let m = phi.src();
        match g {
            GElem::Xy { n, a, b } => {
                // φ*(x^a y^b) = x^s y^b with a = q(n+1) + r and
                // s = q(m+1) + #{i : φ(i) < r}.
                let (q, r) = (a / (n + 1), a % (n + 1));
                let below = phi.values().iter().take_while(|&&v| v < r).count();
                let s = (q * (m + 1) + below) % self.x_order(m);
                GElem::Xy { n: m, a: s, b: *b }
            }
            GElem::Perm(p) => GElem::Perm(twisted::star_perm(phi, p, |_| false)),
            GElem::Wreath(w) => {
                let k = self.labels().expect("wreath");
                let corrupt = self.corruption == Some(Corruption::InvertedParityBranch)
                    && phi.src() == phi.dst() + 1
                    && phi.values()[0] == 0
                    && phi.values()[1] == 0;
                if corrupt {
                    GElem::Wreath(twisted::star_elem_with(k, phi, w, |l| !k.is_odd(l)))
                } else {
                    GElem::Wreath(twisted::star_elem(k, phi, w))
                }
            }
            GElem::Pair(g, h) => {
                GElem::Pair(Box::new(self.inner().expect("pair").star_elem_unchecked(phi, g)), *h)
            }
        }
    }

    /// `(φ₂, g₂) ∘ (φ₁, g₁) = (φ₂ ∘ g₂*φ₁, g₁ · φ₁*g₂)`.
    pub fn compose(&self, f2: &CsgMorphism, f1: &CsgMorphism) -> Result<CsgMorphism> {
        if f1.dst() != f2.src() {
            return Err(Error::Mismatch(alloc::format!(
                "cannot compose a morphism out of [{}] after one into [{}]",
                f2.src(),
                f1.dst()
            )));
        }
        let moved = self.star_map_unchecked(&f2.g, &f1.ord);
        let pulled = self.star_elem_unchecked(&f1.ord, &f2.g);
        Ok(CsgMorphism { ord: f2.ord.compose_unchecked(&moved), g: self.mul(&f1.g, &pulled) })
    }

    pub fn identity_morphism(&self, n: usize) -> CsgMorphism {
        CsgMorphism { ord: OrdMap::identity(n), g: self.identity(n) }
    }

    pub fn from_map(&self, ord: OrdMap) -> CsgMorphism {
        let g = self.identity(ord.src());
        CsgMorphism { ord, g }
    }

    pub fn from_elem(&self, g: GElem) -> CsgMorphism {
        CsgMorphism { ord: OrdMap::identity(g.level()), g }
    }

    /// Generators of `G_n`.
    pub fn generators(&self, n: usize) -> Vec<GElem> {
        match &self.family {
            Family::Cyclic => alloc::vec![self.x(n).expect("x")],
            Family::Dihedral | Family::Quaternionic => {
                alloc::vec![self.x(n).expect("x"), self.y(n).expect("y")]
            }
            Family::Reflexive => alloc::vec![self.y(n).expect("y")],
            Family::Symmetric => (0..n).map(|i| GElem::Perm(Perm::transposition(n, i, i + 1))).collect(),
            Family::Hyperoctahedral | Family::TwistedSymmetric(_) => {
                let k = self.labels().expect("wreath");
                let mut out: Vec<GElem> = (0..n)
                    .map(|i| GElem::Wreath(WreathElem { labels: alloc::vec![0; n + 1], perm: Perm::transposition(n, i, i + 1) }))
                    .collect();
                for g in k.generators() {
                    let mut labels = alloc::vec![0; n + 1];
                    labels[0] = g;
                    out.push(GElem::Wreath(WreathElem { labels, perm: Perm::identity(n) }));
                }
                out
            }
            Family::ProductWithGroup(inner, h) => {
                let mut out: Vec<GElem> = inner.generators(n).into_iter().map(|g| GElem::Pair(Box::new(g), 0)).collect();
                out.extend(h.generators().into_iter().map(|k| GElem::Pair(Box::new(inner.identity(n)), k)));
                out
            }
        }
    }

    /// The `idx`-th element of `G_n` in a fixed enumeration, `idx < |G_n|`.
    pub fn element_at(&self, n: usize, idx: usize) -> GElem {
        match &self.family {
            Family::Cyclic => GElem::Xy { n, a: idx, b: 0 },
            Family::Dihedral | Family::Quaternionic => {
                let xo = self.x_order(n);
                GElem::Xy { n, a: idx % xo, b: (idx / xo) as u8 }
            }
            Family::Reflexive => GElem::Xy { n, a: 0, b: idx as u8 },
            Family::Symmetric => GElem::Perm(nth_perm(n, idx)),
            Family::Hyperoctahedral | Family::TwistedSymmetric(_) => {
                let k = self.labels().expect("wreath").order();
                let mut rest = idx;
                let mut labels = Vec::with_capacity(n + 1);
                for _ in 0..=n {
                    labels.push(rest % k);
                    rest /= k;
                }
                GElem::Wreath(WreathElem { labels, perm: nth_perm(n, rest) })
            }
            Family::ProductWithGroup(inner, h) => {
                GElem::Pair(Box::new(inner.element_at(n, idx / h.order())), idx % h.order())
            }
        }
    }

    pub fn elements(&self, n: usize) -> Vec<GElem> {
        (0..self.level_order(n)).map(|i| self.element_at(n, i)).collect()
    }

    pub fn random_element<R: Rng>(&self, n: usize, rng: &mut R) -> GElem {
        self.element_at(n, rng.gen_range(0..self.level_order(n)))
    }

    /// Maps a morphism of the reflexive instance into the dihedral one.
    pub fn reflexive_to_dihedral(f: &CsgMorphism) -> CsgMorphism {
        f.clone()
    }

    pub fn fmt_elem(&self, g: &GElem) -> String {
        literal::format_elem(self, g)
    }

    pub fn fmt_morphism(&self, f: &CsgMorphism) -> String {
        literal::format_morphism(self, f)
    }

    pub fn parse_morphism(&self, s: &str) -> Result<CsgMorphism> {
        literal::parse_morphism(self, s)
    }
}

/// The `idx`-th permutation of `{0,…,n}` in lexicographic order.
fn nth_perm(n: usize, mut idx: usize) -> Perm {
    let mut pool: Vec<usize> = (0..=n).collect();
    let mut images = gpar::Images::new();
    for k in (0..=n).rev() {
        let f = factorial(k);
        let q = idx / f;
        idx %= f;
        images.push(pool.remove(q));
    }
    Perm::from_images_unchecked(images)
}

impl fmt::Debug for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GElem::Xy { n, a, b } => write!(f, "x^{a} y^{b} @{n}"),
            GElem::Perm(p) => write!(f, "(;{p})"),
            GElem::Wreath(w) => write!(f, "{:?};{}", w.labels, w.perm),
            GElem::Pair(g, h) => write!(f, "({g:?}, {h})"),
        }
    }
}

impl fmt::Debug for CsgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {:?}", self.ord, self.g)
    }
}
