//! `V` (the permutation `θ_g`), `L`, the canonical parity `λ₀`, the functor
//! `λ̃` into the twisted symmetric category, and the dualities `I`.

use alloc::string::String;
use alloc::vec::Vec;

use super::twisted::TsMorphism;
use super::{Corruption, CsgInstance, CsgMorphism, Family, GElem};
use crate::error::{Error, Result};
use crate::gpar::{GroupOps, ParityGroup, Perm, WreathElem};
use crate::ordmap::OrdMap;

/// `V_n(g)`.
pub fn theta(inst: &CsgInstance, g: &GElem) -> Perm {
    inst.theta(g)
}

/// `θ_g` recomputed from its definition: `θ_g⁻¹(i) = j` where
/// `g*φ_i = φ_j` for the vertex maps `φ_i : [0] → [n]`.
pub fn theta_by_definition(inst: &CsgInstance, g: &GElem) -> Perm {
    let n = g.level();
    let mut inv = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let moved = inst.star_map_unchecked(g, &OrdMap::point(n, i));
        inv.push(moved.apply(0));
    }
    Perm::new(&inv).expect("θ is a bijection").inverse()
}

/// Index of a level-0 element in the group returned by [`canonical_parity`].
pub fn level0_index(inst: &CsgInstance, g: &GElem) -> usize {
    debug_assert_eq!(g.level(), 0);
    match (inst.family(), g) {
        (Family::Cyclic, _) | (Family::Symmetric, _) => 0,
        (Family::Dihedral | Family::Reflexive, GElem::Xy { b, .. }) => *b as usize,
        // x₀ = y₀², so x₀^a y₀^b = y₀^{2a+b}
        (Family::Quaternionic, GElem::Xy { a, b, .. }) => (2 * a + *b as usize) % 4,
        (_, GElem::Wreath(w)) => w.labels[0],
        (Family::ProductWithGroup(inner, h), GElem::Pair(g, k)) => level0_index(inner, g) * h.order() + k,
        _ => unreachable!("element does not belong to the instance"),
    }
}

/// Inverse of [`level0_index`].
pub fn level0_elem(inst: &CsgInstance, idx: usize) -> GElem {
    inst.elements(0).into_iter().find(|g| level0_index(inst, g) == idx).expect("index in range")
}

/// The sign `λ₀(g)`: `+1` when `(σ₀*g)*δ₀ = δ₀`, `−1` when it is `δ₁`.
pub fn lambda0(inst: &CsgInstance, g: &GElem) -> i8 {
    let s0 = OrdMap::degeneracy(0, 0).expect("σ₀");
    let d0 = OrdMap::face(1, 0).expect("δ₀");
    let lifted = inst.star_elem_unchecked(&s0, g);
    if inst.star_map_unchecked(&lifted, &d0) == d0 {
        1
    } else {
        -1
    }
}

/// `(G₀, λ₀)` with elements indexed by [`level0_index`].
pub fn canonical_parity(inst: &CsgInstance) -> ParityGroup {
    let elems = inst.elements(0);
    let k = elems.len();
    let mut by_index: Vec<Option<GElem>> = alloc::vec![None; k];
    for g in elems {
        let i = level0_index(inst, &g);
        by_index[i] = Some(g);
    }
    let by_index: Vec<GElem> = by_index.into_iter().map(|g| g.expect("bijective indexing")).collect();
    let table = by_index
        .iter()
        .map(|g| by_index.iter().map(|h| level0_index(inst, &inst.mul(g, h))).collect())
        .collect();
    let parity: Vec<i8> = by_index.iter().map(|g| lambda0(inst, g)).collect();
    let names: Vec<String> = by_index.iter().map(|g| inst.fmt_elem(g)).collect();
    ParityGroup::from_table(names, table, &parity).expect("level 0 group with parity")
}

/// `L_n(g) = (φ₀*g, …, φ_n*g; θ_g)` in `G₀ ≀ Σ_{n+1}`.
#[allow(non_snake_case)]
pub fn L(inst: &CsgInstance, g: &GElem) -> WreathElem<usize> {
    let n = g.level();
    let labels = (0..=n)
        .map(|i| level0_index(inst, &inst.star_elem_unchecked(&OrdMap::point(n, i), g)))
        .collect();
    WreathElem { labels, perm: inst.theta(g) }
}

/// `λ̃(φ ∘ g) = φ ∘ L(g)`.
pub fn lambda_tilde(inst: &CsgInstance, f: &CsgMorphism) -> TsMorphism<usize> {
    TsMorphism { ord: f.ord.clone(), g: L(inst, &f.g) }
}

fn require_self_dual(inst: &CsgInstance) -> Result<()> {
    if inst.is_self_dual() {
        Ok(())
    } else {
        Err(Error::Unsupported(alloc::format!("{} carries no self-dual structure", inst.name())))
    }
}

/// `I` on automorphisms: `xʳyˢ ↦ x⁻ʳyˢ` for even `s`, `x^{r+1}yˢ` for odd
/// `s`, and `h ↦ h⁻¹` on a product factor.
pub fn dual_elem(inst: &CsgInstance, g: &GElem) -> Result<GElem> {
    require_self_dual(inst)?;
    Ok(match (inst.family(), g) {
        (Family::ProductWithGroup(inner, h), GElem::Pair(g, k)) => {
            GElem::Pair(alloc::boxed::Box::new(dual_elem(inner, g)?), h.inv(k))
        }
        (_, GElem::Xy { n, a, b }) => {
            let xo = inst.x_order(*n);
            let a = if *b == 0 { (xo - a) % xo } else { (a + 1) % xo };
            GElem::Xy { n: *n, a, b: *b }
        }
        _ => unreachable!(),
    })
}

/// `I` on a face or degeneracy, as a morphism of the same instance.
pub fn dual_generator(inst: &CsgInstance, gen: crate::ordmap::Generator) -> Result<CsgMorphism> {
    require_self_dual(inst)?;
    use crate::ordmap::Generator::*;
    Ok(match gen {
        Face { target: n, index: i } if i < n => inst.from_map(OrdMap::degeneracy(n - 1, i)?),
        Face { target: n, .. } => {
            let xinv = inst.inv(&inst.x(n)?);
            CsgMorphism::new(OrdMap::degeneracy(n - 1, 0)?, xinv)?
        }
        Degeneracy { target: n, index: i } => {
            let j = if inst.corruption() == Some(Corruption::PerturbedDualitySigma) { i } else { i + 1 };
            inst.from_map(OrdMap::face(n + 1, j)?)
        }
    })
}

/// The contravariant duality `I(φ ∘ g) = I(g) ∘ I(φ)`.
pub fn duality(inst: &CsgInstance, f: &CsgMorphism) -> Result<CsgMorphism> {
    require_self_dual(inst)?;
    let n = f.dst();
    // φ = c_k ∘ … ∘ c_1, so I(φ) = I(c_1) ∘ … ∘ I(c_k)
    let mut acc = inst.identity_morphism(n);
    for gen in f.ord.generator_chain().into_iter().rev() {
        acc = inst.compose(&dual_generator(inst, gen)?, &acc)?;
    }
    let ig = inst.from_elem(dual_elem(inst, &f.g)?);
    inst.compose(&ig, &acc)
}
