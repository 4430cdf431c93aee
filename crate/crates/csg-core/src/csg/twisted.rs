//! Star operations of the twisted symmetric crossed simplicial group
//! `Δφ≀Σ`, generic in the label group.
//!
//! An element `(ℓ; γ)` of `G ≀ Σ_{n+1}` has `θ = γ` and acts on vertices by
//! the set map `γ⁻¹`. Labels are indexed by the source of that set map.

use alloc::vec::Vec;

use crate::gpar::{GroupOps, Images, Perm, WreathElem};
use crate::ordmap::{OrdMap, Values};

/// `g*φ` depends only on `γ`: the fiber of `γ*φ` over `j` has the size of
/// `φ⁻¹(γ(j))`.
pub fn star_map(perm: &Perm, phi: &OrdMap) -> OrdMap {
    let n = phi.dst();
    let mut sizes: smallvec::SmallVec<[usize; 8]> = smallvec::smallvec![0; n + 1];
    for &v in phi.values() {
        sizes[v] += 1;
    }
    let mut values = Values::new();
    for j in 0..=n {
        let s = sizes[perm.apply(j)];
        values.extend(core::iter::repeat(j).take(s));
    }
    OrdMap::from_values_unchecked(n, values)
}

/// `φ*(ℓ; γ)`: label `ℓ_{φ(x)}` at every `x`; the permutation places the
/// fiber `φ⁻¹(γ(j))` into block `j` of `γ*φ`, reversed when its label is odd.
///
/// `flip` decides reversal from the label; the honest rule is `is_odd`.
pub fn star_elem_with<K: GroupOps>(
    _k: &K,
    phi: &OrdMap,
    g: &WreathElem<K::Elem>,
    flip: impl Fn(&K::Elem) -> bool,
) -> WreathElem<K::Elem> {
    let perm = star_perm(phi, &g.perm, |i| flip(&g.labels[i]));
    let labels: Vec<K::Elem> = phi.values().iter().map(|&i| g.labels[i].clone()).collect();
    WreathElem { labels, perm }
}

/// The permutation part of `φ*(ℓ; γ)`; `reversed(i)` says whether the fiber
/// over `i` is reversed. Unlabelled permutations never reverse.
pub fn star_perm(phi: &OrdMap, perm: &Perm, reversed: impl Fn(usize) -> bool) -> Perm {
    let n = phi.dst();
    let m = phi.src();
    let vals = phi.values();
    // fiber starts in the source of φ
    let mut start: smallvec::SmallVec<[usize; 9]> = smallvec::smallvec![0; n + 2];
    for &v in vals {
        start[v + 1] += 1;
    }
    for i in 0..=n {
        start[i + 1] += start[i];
    }
    // block offset in the target of the fiber over i, which lands in block γ⁻¹(i)
    let mut offset: smallvec::SmallVec<[usize; 9]> = smallvec::smallvec![0; n + 1];
    let mut acc = 0;
    for j in 0..=n {
        let i = perm.apply(j);
        offset[i] = acc;
        acc += start[i + 1] - start[i];
    }
    // τ: source → position, then θ = τ⁻¹
    let mut theta: Images = smallvec::smallvec![0; m + 1];
    for x in 0..=m {
        let i = vals[x];
        let size = start[i + 1] - start[i];
        let rank = x - start[i];
        let pos = if reversed(i) { offset[i] + size - 1 - rank } else { offset[i] + rank };
        theta[pos] = x;
    }
    Perm::from_images_unchecked(theta)
}

pub fn star_elem<K: GroupOps>(k: &K, phi: &OrdMap, g: &WreathElem<K::Elem>) -> WreathElem<K::Elem> {
    star_elem_with(k, phi, g, |l| k.is_odd(l))
}

/// A morphism `φ ∘ g` of `Δφ≀Σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TsMorphism<E> {
    pub ord: OrdMap,
    pub g: WreathElem<E>,
}

impl<E: Clone> TsMorphism<E> {
    pub fn src(&self) -> usize {
        self.ord.src()
    }
    pub fn dst(&self) -> usize {
        self.ord.dst()
    }
}

/// `(φ₂, g₂) ∘ (φ₁, g₁) = (φ₂ ∘ g₂*φ₁, g₁ · φ₁*g₂)`.
pub fn compose<K: GroupOps>(
    k: &K,
    f2: &TsMorphism<K::Elem>,
    f1: &TsMorphism<K::Elem>,
) -> TsMorphism<K::Elem> {
    assert_eq!(f1.dst(), f2.src(), "endpoint mismatch");
    let moved = star_map(&f2.g.perm, &f1.ord);
    let pulled = star_elem(k, &f1.ord, &f2.g);
    TsMorphism {
        ord: f2.ord.compose_unchecked(&moved),
        g: crate::gpar::wreath_mul_unchecked(k, &f1.g, &pulled),
    }
}

pub fn identity<K: GroupOps>(k: &K, n: usize) -> TsMorphism<K::Elem> {
    TsMorphism { ord: OrdMap::identity(n), g: crate::gpar::wreath_identity(k, n) }
}

/// The permutation realizing `g` as a set map, `γ⁻¹`, together with the
/// labels listed by position in the target. This is the "block" picture
/// used when drawing morphisms of `Δφ≀Σ`.
pub fn block_form<E: Clone>(g: &WreathElem<E>) -> (Perm, Vec<E>) {
    let sigma = g.perm.inverse();
    let labels = (0..g.labels.len()).map(|p| g.labels[g.perm.apply(p)].clone()).collect();
    (sigma, labels)
}

/// Inverse of [`block_form`].
pub fn from_block_form<E: Clone>(sigma: &Perm, labels_by_position: &[E]) -> WreathElem<E> {
    let perm = sigma.inverse();
    let labels = (0..labels_by_position.len()).map(|x| labels_by_position[sigma.apply(x)].clone()).collect();
    WreathElem { labels, perm }
}
