//! The twisted associative operad `Assoc^φ`, its envelope `Env(Assoc^φ)`,
//! and the isomorphism `F` onto the whiskered category `Δφ≀Σ₊`.
//!
//! Elements are 0-based internally; literals are 1-based as in print.
//! Labels are always listed in the natural order of the elements they sit
//! on, never in the order of a fiber's ordering.
//!
//! In `Env` the labels of a composite are `h_{α₁(x)} · g_x`, outer label on
//! the left. Under `F` this is the wreath product over the opposite label
//! group, which is what [`whiskered_compose`] uses.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::csg::twisted::{self, TsMorphism};
use crate::error::{Error, Result};
use crate::gpar::{FreeParityGroup, GroupOps, Op, ParityGroup, Perm, WreathElem};
use crate::ordmap::OrdMap;

/// An element of `Assoc^φ(k) = Assoc(k) × G^k`: a linear order on
/// `{0,…,k-1}` listed from least to greatest, and a label per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AssocPhiElem<E> {
    pub order: Vec<usize>,
    pub labels: Vec<E>,
}

impl<E: Clone> AssocPhiElem<E> {
    pub fn new(order: Vec<usize>, labels: Vec<E>) -> Result<Self> {
        if order.len() != labels.len() {
            return Err(Error::Mismatch("an operation needs one label per input".into()));
        }
        let mut seen = alloc::vec![false; order.len()];
        for &o in &order {
            if o >= seen.len() || core::mem::replace(&mut seen[o], true) {
                return Err(Error::Invalid("ordering is not a permutation of the inputs".into()));
            }
        }
        Ok(Self { order, labels })
    }

    pub fn arity(&self) -> usize {
        self.order.len()
    }

    /// Renames input `x` to `f[x]`.
    pub fn rename(&self, f: &[usize]) -> Self {
        let order = self.order.iter().map(|&x| f[x]).collect();
        let mut labels = self.labels.clone();
        for (x, l) in self.labels.iter().enumerate() {
            labels[f[x]] = l.clone();
        }
        Self { order, labels }
    }
}

pub fn operad_unit<K: GroupOps>(k: &K) -> AssocPhiElem<K::Elem> {
    AssocPhiElem { order: alloc::vec![0], labels: alloc::vec![k.identity()] }
}

/// `γ(a; b_0, …, b_{k-1})`. Block `i` carries the inputs of `b_i`, blocks
/// are laid out in index order, ordered by `a`, and `b_i`'s ordering is
/// reversed when `a`'s label at `i` is odd. Labels of block `i` become
/// `g_i · h`.
pub fn operad_compose<K: GroupOps>(
    k: &K,
    outer: &AssocPhiElem<K::Elem>,
    inners: &[AssocPhiElem<K::Elem>],
) -> Result<AssocPhiElem<K::Elem>> {
    compose_with(k, outer, inners, true)
}

fn compose_with<K: GroupOps>(
    k: &K,
    outer: &AssocPhiElem<K::Elem>,
    inners: &[AssocPhiElem<K::Elem>],
    twist: bool,
) -> Result<AssocPhiElem<K::Elem>> {
    if inners.len() != outer.arity() {
        return Err(Error::Mismatch(alloc::format!(
            "an operation of arity {} takes {} inputs, got {}",
            outer.arity(),
            outer.arity(),
            inners.len()
        )));
    }
    let mut offset = Vec::with_capacity(inners.len());
    let mut acc = 0;
    for b in inners {
        offset.push(acc);
        acc += b.arity();
    }
    let mut labels = Vec::with_capacity(acc);
    for (i, b) in inners.iter().enumerate() {
        labels.extend(b.labels.iter().map(|h| k.mul(&outer.labels[i], h)));
    }
    let mut order = Vec::with_capacity(acc);
    for &i in &outer.order {
        let block = inners[i].order.iter().map(|&x| x + offset[i]);
        if twist && k.is_odd(&outer.labels[i]) {
            order.extend(block.rev());
        } else {
            order.extend(block);
        }
    }
    Ok(AssocPhiElem { order, labels })
}

/// All operations of arity `n` with labels from `labels`.
pub fn all_operations<E: Clone>(n: usize, labels: &[E]) -> Vec<AssocPhiElem<E>> {
    let mut out = Vec::new();
    let perms: Vec<Vec<usize>> =
        if n == 0 { alloc::vec![Vec::new()] } else { Perm::all(n - 1).iter().map(|p| p.images().to_vec()).collect() };
    let total = labels.len().pow(n as u32);
    for order in perms {
        for mut idx in 0..total {
            let mut ls = Vec::with_capacity(n);
            for _ in 0..n {
                ls.push(labels[idx % labels.len()].clone());
                idx /= labels.len();
            }
            out.push(AssocPhiElem { order: order.clone(), labels: ls });
        }
    }
    out
}

/// Deliberate defect for the operad checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadCorruption {
    /// Inner orderings are never reversed.
    DropReversal,
}

#[derive(Clone, Debug, Default)]
pub struct OperadReport {
    /// `(law, witness)`, at most three per law.
    pub violations: Vec<(&'static str, String)>,
    pub counts: BTreeMap<&'static str, usize>,
    pub checks: usize,
}

impl OperadReport {
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    fn record(&mut self, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            let c = self.counts.entry(law).or_default();
            *c += 1;
            if *c <= 3 {
                self.violations.push((law, witness()));
            }
        }
    }
}

/// Every way to split `total` into `parts` ordered summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Tuples `(b_0, …, b_{k-1})` with the given arities.
fn tuples<E: Clone>(arities: &[usize], ops: &[Vec<AssocPhiElem<E>>]) -> Vec<Vec<AssocPhiElem<E>>> {
    let mut out = alloc::vec![Vec::new()];
    for &a in arities {
        let mut next = Vec::new();
        for t in &out {
            for b in &ops[a] {
                let mut t2: Vec<AssocPhiElem<E>> = t.clone();
                t2.push(b.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Checks unit, associativity, Σ-equivariance and the parity twist
/// `γ((0; g); b) = g·b` for every operation with all arities involved at
/// most `max_arity`.
pub fn operad_axiom_check(g: &ParityGroup, max_arity: usize, corruption: Option<OperadCorruption>) -> OperadReport {
    let twist = corruption != Some(OperadCorruption::DropReversal);
    let gamma = |a: &AssocPhiElem<usize>, bs: &[AssocPhiElem<usize>]| compose_with(g, a, bs, twist).expect("arity");
    let labels: Vec<usize> = g.elements().collect();
    let ops: Vec<Vec<AssocPhiElem<usize>>> = (0..=max_arity).map(|n| all_operations(n, &labels)).collect();
    let unit = operad_unit(g);
    let show = |a: &AssocPhiElem<usize>| render_operation(a, |l| g.name(*l).to_string());
    let mut rep = OperadReport::default();

    for n in 0..=max_arity {
        for a in &ops[n] {
            rep.record("unit", gamma(&unit, core::slice::from_ref(a)) == *a, || alloc::format!("γ(1; {})", show(a)));
            let units = alloc::vec![unit.clone(); n];
            rep.record("unit", gamma(a, &units) == *a, || alloc::format!("γ({}; 1,…,1)", show(a)));
        }
    }

    // the C₂-twist: a unary g acts on b by reversal when odd
    for n in 0..=max_arity {
        for b in &ops[n] {
            for h in g.elements() {
                let outer = AssocPhiElem { order: alloc::vec![0], labels: alloc::vec![h] };
                let mut expected = b.clone();
                if g.is_odd(&h) {
                    expected.order.reverse();
                }
                for l in &mut expected.labels {
                    *l = g.mul(&h, l);
                }
                rep.record("parity twist", gamma(&outer, core::slice::from_ref(b)) == expected, || {
                    alloc::format!("γ(({}); {}) at arity {n}", g.name(h), show(b))
                });
            }
        }
    }

    // equivariance: γ(a·σ; b_σ) is γ(a; b) with blocks renamed
    for n in 0..=max_arity {
        for arities in (0..=max_arity).flat_map(|t| compositions(t, n)) {
            for a in &ops[n] {
                for bs in tuples(&arities, &ops) {
                    let base = gamma(a, &bs);
                    for sigma in if n == 0 { Vec::new() } else { Perm::all(n - 1) } {
                        // input x of a becomes σ⁻¹(x)
                        let sinv = sigma.inverse();
                        let rename: Vec<usize> = (0..n).map(|x| sinv.apply(x)).collect();
                        let a2 = a.rename(&rename);
                        let bs2: Vec<_> = (0..n).map(|y| bs[sigma.apply(y)].clone()).collect();
                        // block x moves to the slot of block σ⁻¹(x)
                        let mut new_off = alloc::vec![0; n];
                        let mut acc = 0;
                        for y in 0..n {
                            new_off[sigma.apply(y)] = acc;
                            acc += bs[sigma.apply(y)].arity();
                        }
                        let mut f = Vec::new();
                        for (x, b) in bs.iter().enumerate() {
                            f.extend((0..b.arity()).map(|j| new_off[x] + j));
                        }
                        let ok = gamma(&a2, &bs2) == base.rename(&f);
                        rep.record("equivariance", ok, || alloc::format!("a = {}, σ = {sigma}", show(a)));
                    }
                }
            }
        }
    }

    // associativity with every arity involved at most max_arity
    for n in 0..=max_arity {
        for arities in (0..=max_arity).flat_map(|t| compositions(t, n)) {
            let mid: usize = arities.iter().sum();
            for a in &ops[n] {
                for bs in tuples(&arities, &ops) {
                    let ab = gamma(a, &bs);
                    for carities in (0..=max_arity).flat_map(|t| compositions(t, mid)) {
                        for cs in tuples(&carities, &ops) {
                            let lhs = gamma(&ab, &cs);
                            let mut start = 0;
                            let mut inner = Vec::with_capacity(n);
                            for b in &bs {
                                inner.push(gamma(b, &cs[start..start + b.arity()]));
                                start += b.arity();
                            }
                            let rhs = gamma(a, &inner);
                            rep.record("associativity", lhs == rhs, || alloc::format!("a = {}", show(a)));
                        }
                    }
                }
            }
        }
    }
    rep
}

/// `(2<1; t,t)`, 1-based.
pub fn render_operation<E>(a: &AssocPhiElem<E>, label: impl Fn(&E) -> String) -> String {
    let order: Vec<String> = a.order.iter().map(|x| (x + 1).to_string()).collect();
    let labels: Vec<String> = a.labels.iter().map(label).collect();
    alloc::format!("({}; {})", order.join("<"), labels.join(", "))
}

/// A morphism of `Env(Assoc^φ)` from `m` points to `n` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvMorphism<E> {
    alpha: Vec<usize>,
    /// `orders[i]` lists `α⁻¹(i)` from least to greatest.
    orders: Vec<Vec<usize>>,
    /// One label per domain element, in natural order.
    labels: Vec<E>,
}

impl<E: Clone> EnvMorphism<E> {
    /// Builds a morphism from its fiber orderings; `α` is read off from
    /// which fiber each element lies in.
    pub fn new(orders: Vec<Vec<usize>>, labels: Vec<E>) -> Result<Self> {
        let m: usize = orders.iter().map(|o| o.len()).sum();
        if labels.len() != m {
            return Err(Error::Mismatch(alloc::format!("{m} elements but {} labels", labels.len())));
        }
        let mut alpha = alloc::vec![usize::MAX; m];
        for (i, o) in orders.iter().enumerate() {
            for &x in o {
                if x >= m || alpha[x] != usize::MAX {
                    return Err(Error::Invalid(alloc::format!(
                        "fibers must partition {{1,…,{m}}}; element {} is out of range or repeated",
                        x + 1
                    )));
                }
                alpha[x] = i;
            }
        }
        Ok(Self { alpha, orders, labels })
    }

    pub fn identity<K: GroupOps<Elem = E>>(k: &K, n: usize) -> Self {
        Self { alpha: (0..n).collect(), orders: (0..n).map(|i| alloc::vec![i]).collect(), labels: alloc::vec![k.identity(); n] }
    }

    pub fn src(&self) -> usize {
        self.alpha.len()
    }

    pub fn dst(&self) -> usize {
        self.orders.len()
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn labels(&self) -> &[E] {
        &self.labels
    }

    /// Fiber `i` as an operation: its ordering and labels, renumbered
    /// `0..|α⁻¹(i)|` in natural order.
    pub fn fiber_operation(&self, i: usize) -> AssocPhiElem<E> {
        let mut members = self.orders[i].clone();
        members.sort_unstable();
        let pos = |x: usize| members.binary_search(&x).expect("member");
        AssocPhiElem {
            order: self.orders[i].iter().map(|&x| pos(x)).collect(),
            labels: members.iter().map(|&x| self.labels[x].clone()).collect(),
        }
    }
}

/// `f2 ∘ f1`: the fiber over `j` lists the fibers of `f1` over the
/// elements of `f2`'s fiber in `f2`'s order, each reversed when its outer
/// label is odd; labels are `h_{α₁(x)} · g_x`.
pub fn env_compose<K: GroupOps>(
    k: &K,
    f2: &EnvMorphism<K::Elem>,
    f1: &EnvMorphism<K::Elem>,
) -> Result<EnvMorphism<K::Elem>> {
    if f1.dst() != f2.src() {
        return Err(Error::Mismatch(alloc::format!(
            "cannot compose a morphism out of {} points after one into {}",
            f2.src(),
            f1.dst()
        )));
    }
    let alpha = f1.alpha.iter().map(|&i| f2.alpha[i]).collect();
    let orders = f2
        .orders
        .iter()
        .map(|o2| {
            let mut out = Vec::new();
            for &i in o2 {
                if k.is_odd(&f2.labels[i]) {
                    out.extend(f1.orders[i].iter().rev().copied());
                } else {
                    out.extend(f1.orders[i].iter().copied());
                }
            }
            out
        })
        .collect();
    let labels = f1.alpha.iter().zip(&f1.labels).map(|(&i, g)| k.mul(&f2.labels[i], g)).collect();
    Ok(EnvMorphism { alpha, orders, labels })
}

/// Disjoint union `a ⊕ b`, with `b`'s points placed after `a`'s.
pub fn env_sum<E: Clone>(a: &EnvMorphism<E>, b: &EnvMorphism<E>) -> EnvMorphism<E> {
    let (m, n) = (a.src(), a.dst());
    let mut alpha = a.alpha.clone();
    alpha.extend(b.alpha.iter().map(|i| i + n));
    let mut orders = a.orders.clone();
    orders.extend(b.orders.iter().map(|o| o.iter().map(|x| x + m).collect()));
    let mut labels = a.labels.clone();
    labels.extend(b.labels.iter().cloned());
    EnvMorphism { alpha, orders, labels }
}

/// A morphism of `Δφ≀Σ₊` between objects `⟨m⟩`, where `⟨0⟩` is the added
/// initial object and `⟨n⟩ = [n-1]` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Whiskered<E> {
    /// The unique arrow `⟨0⟩ → ⟨dst⟩`.
    FromEmpty { dst: usize },
    Map(TsMorphism<E>),
}

impl<E: Clone> Whiskered<E> {
    pub fn src(&self) -> usize {
        match self {
            Whiskered::FromEmpty { .. } => 0,
            Whiskered::Map(f) => f.src() + 1,
        }
    }

    pub fn dst(&self) -> usize {
        match self {
            Whiskered::FromEmpty { dst } => *dst,
            Whiskered::Map(f) => f.dst() + 1,
        }
    }
}

pub fn whiskered_identity<K: GroupOps>(k: &K, n: usize) -> Whiskered<K::Elem> {
    if n == 0 {
        Whiskered::FromEmpty { dst: 0 }
    } else {
        Whiskered::Map(twisted::identity(k, n - 1))
    }
}

/// Composition in `Δφ≀Σ₊`, labels multiplied in the opposite group.
pub fn whiskered_compose<K: GroupOps>(
    k: &K,
    b: &Whiskered<K::Elem>,
    a: &Whiskered<K::Elem>,
) -> Result<Whiskered<K::Elem>> {
    if a.dst() != b.src() {
        return Err(Error::Mismatch(alloc::format!("cannot compose ⟨{}⟩ → … after … → ⟨{}⟩", b.src(), a.dst())));
    }
    Ok(match (a, b) {
        (Whiskered::FromEmpty { .. }, _) => Whiskered::FromEmpty { dst: b.dst() },
        (Whiskered::Map(f1), Whiskered::Map(f2)) => Whiskered::Map(twisted::compose(&Op(k), f2, f1)),
        (Whiskered::Map(_), Whiskered::FromEmpty { .. }) => unreachable!("⟨0⟩ has no incoming maps"),
    })
}

/// `⟨m⟩ + ⟨n⟩ = ⟨m+n⟩` on morphisms: block sums, with `⟨0⟩` a strict unit.
pub fn monoidal_sum<E: Clone>(a: &Whiskered<E>, b: &Whiskered<E>) -> Whiskered<E> {
    match (a, b) {
        (Whiskered::FromEmpty { dst: p }, Whiskered::FromEmpty { dst: q }) => Whiskered::FromEmpty { dst: p + q },
        (Whiskered::FromEmpty { dst }, Whiskered::Map(f)) => Whiskered::Map(shift_into(f, *dst, 0)),
        (Whiskered::Map(f), Whiskered::FromEmpty { dst }) => Whiskered::Map(shift_into(f, 0, *dst)),
        (Whiskered::Map(f), Whiskered::Map(g)) => {
            let mut values: Vec<usize> = f.ord.values().to_vec();
            values.extend(g.ord.values().iter().map(|v| v + f.dst() + 1));
            let ord = OrdMap::new(f.dst() + g.dst() + 1, &values).expect("block sum is monotone");
            let mut labels = f.g.labels.clone();
            labels.extend(g.g.labels.iter().cloned());
            Whiskered::Map(TsMorphism { ord, g: WreathElem { labels, perm: f.g.perm.block_sum(&g.g.perm) } })
        }
    }
}

/// `f` with `before` target points added in front and `after` at the end.
fn shift_into<E: Clone>(f: &TsMorphism<E>, before: usize, after: usize) -> TsMorphism<E> {
    let values: Vec<usize> = f.ord.values().iter().map(|v| v + before).collect();
    let ord = OrdMap::new(f.dst() + before + after, &values).expect("shift is monotone");
    TsMorphism { ord, g: f.g.clone() }
}

/// The symmetry `⟨m⟩ + ⟨n⟩ → ⟨n⟩ + ⟨m⟩`.
pub fn block_swap<K: GroupOps>(k: &K, m: usize, n: usize) -> Whiskered<K::Elem> {
    if m + n == 0 {
        return Whiskered::FromEmpty { dst: 0 };
    }
    // position p of the target holds source element perm(p)
    let images: Vec<usize> = (0..m + n).map(|p| if p < n { m + p } else { p - n }).collect();
    let perm = Perm::new(&images).expect("swap");
    Whiskered::Map(TsMorphism {
        ord: OrdMap::identity(m + n - 1),
        g: WreathElem { labels: alloc::vec![k.identity(); m + n], perm },
    })
}

/// `F`: the Δ-part is the monotone map with the fiber sizes of `α`; the
/// permutation lists the elements in block order, each block in its
/// fiber's ordering; labels stay on their elements.
#[allow(non_snake_case)]
pub fn F<E: Clone>(f: &EnvMorphism<E>) -> Whiskered<E> {
    if f.src() == 0 {
        return Whiskered::FromEmpty { dst: f.dst() };
    }
    let sizes: Vec<usize> = f.orders.iter().map(|o| o.len()).collect();
    let ord = OrdMap::from_fibers(&sizes).expect("nonempty domain");
    let images: Vec<usize> = f.orders.iter().flatten().copied().collect();
    let perm = Perm::new(&images).expect("fibers partition the domain");
    Whiskered::Map(TsMorphism { ord, g: WreathElem { labels: f.labels.clone(), perm } })
}

#[allow(non_snake_case)]
pub fn F_inv<E: Clone>(w: &Whiskered<E>) -> EnvMorphism<E> {
    match w {
        Whiskered::FromEmpty { dst } => EnvMorphism { alpha: Vec::new(), orders: alloc::vec![Vec::new(); *dst], labels: Vec::new() },
        Whiskered::Map(f) => {
            let m = f.src() + 1;
            let mut alpha = alloc::vec![0; m];
            let mut orders = alloc::vec![Vec::new(); f.dst() + 1];
            for p in 0..m {
                let x = f.g.perm.apply(p);
                let i = f.ord.apply(p);
                alpha[x] = i;
                orders[i].push(x);
            }
            EnvMorphism { alpha, orders, labels: f.g.labels.clone() }
        }
    }
}

/// `|Env(m, n)| = |Δ([m-1],[n-1])| · |G ≀ Σ_m|` for `m, n ≥ 1`; one arrow
/// out of the empty set; none into it otherwise.
pub fn env_hom_count(m: usize, n: usize, group_order: usize) -> u128 {
    match (m, n) {
        (0, _) => 1,
        (_, 0) => 0,
        _ => {
            let binom = |a: u128, b: u128| (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1));
            let fact: u128 = (1..=m as u128).product();
            binom((m + n - 1) as u128, m as u128) * fact * (group_order as u128).pow(m as u32)
        }
    }
}

/// All fiber orderings of maps from `m` points to `n` points.
pub fn all_env_shapes(m: usize, n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = alloc::vec![alloc::vec![Vec::new(); n]];
    if n == 0 {
        return if m == 0 { out } else { Vec::new() };
    }
    // insert elements one at a time into every slot of every fiber
    for x in 0..m {
        let mut next = Vec::new();
        for shape in &out {
            for i in 0..n {
                for slot in 0..=shape[i].len() {
                    let mut s = shape.clone();
                    s[i].insert(slot, x);
                    next.push(s);
                }
            }
        }
        out = next;
    }
    out
}

/// Parses `(name; (5<2<4; g11+,g12-,g13+), (), (1; g31+))`. Elements are
/// 1-based; the labels of a fiber follow the natural order of its
/// elements. Returns the name (possibly empty) and the morphism.
pub fn parse_env<E: Clone>(s: &str, mut label: impl FnMut(&str) -> Result<E>) -> Result<(String, EnvMorphism<E>)> {
    let s = s.trim();
    let body = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(alloc::format!("Env literal `{s}` needs outer parentheses")))?;
    let (name, rest) = match body.find(';') {
        Some(i) if !body[..i].contains('(') => (body[..i].trim().to_string(), &body[i + 1..]),
        _ => (String::new(), body),
    };
    let mut fibers: Vec<(Vec<usize>, Vec<String>)> = Vec::new();
    let mut rest = rest.trim();
    while !rest.is_empty() {
        let r = rest.strip_prefix('(').ok_or_else(|| Error::Parse(alloc::format!("expected `(` at `{rest}`")))?;
        let close = r.find(')').ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?;
        let inner = r[..close].trim();
        if inner.is_empty() || inner == "∅" {
            fibers.push((Vec::new(), Vec::new()));
        } else {
            let (ord, labs) = inner
                .split_once(';')
                .ok_or_else(|| Error::Parse(alloc::format!("fiber `({inner})` needs `;`")))?;
            let elems = ord
                .split('<')
                .map(|t| match crate::ordmap::parse_usize(t)? {
                    0 => Err(Error::Parse("elements are numbered from 1".into())),
                    v => Ok(v - 1),
                })
                .collect::<Result<Vec<_>>>()?;
            let labs: Vec<String> = labs.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect();
            fibers.push((elems, labs));
        }
        rest = r[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    let m: usize = fibers.iter().map(|f| f.0.len()).sum();
    let mut labels: Vec<Option<E>> = alloc::vec![None; m];
    let mut orders = Vec::with_capacity(fibers.len());
    for (elems, labs) in fibers {
        if elems.len() != labs.len() {
            return Err(Error::Mismatch(alloc::format!("fiber with {} elements has {} labels", elems.len(), labs.len())));
        }
        let mut natural = elems.clone();
        natural.sort_unstable();
        for (x, l) in natural.iter().zip(&labs) {
            if *x >= m {
                return Err(Error::Invalid(alloc::format!("element {} exceeds the domain size {m}", x + 1)));
            }
            labels[*x] = Some(label(l)?);
        }
        orders.push(elems);
    }
    let labels = labels
        .into_iter()
        .map(|l| l.ok_or_else(|| Error::Invalid("fibers must cover every element".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((name, EnvMorphism::new(orders, labels)?))
}

/// Inverse of [`parse_env`], with `", "` separators and `()` for empty
/// fibers.
pub fn format_env<E>(name: &str, f: &EnvMorphism<E>, label: impl Fn(&E) -> String) -> String {
    let fibers: Vec<String> = f
        .orders
        .iter()
        .map(|o| {
            if o.is_empty() {
                return "()".to_string();
            }
            let ord: Vec<String> = o.iter().map(|x| (x + 1).to_string()).collect();
            let mut natural = o.clone();
            natural.sort_unstable();
            let labs: Vec<String> = natural.iter().map(|&x| label(&f.labels[x])).collect();
            alloc::format!("({}; {})", ord.join("<"), labs.join(", "))
        })
        .collect();
    if name.is_empty() {
        alloc::format!("({})", fibers.join(", "))
    } else {
        alloc::format!("({name}; {})", fibers.join(", "))
    }
}

/// Label parser for symbolic groups: `g11+` and `g41-` declare generators
/// with a parity; unsigned tokens are words in known generators.
pub fn free_label(grp: &mut FreeParityGroup) -> impl FnMut(&str) -> Result<crate::gpar::Word> + '_ {
    move |t: &str| {
        if let Some(name) = t.strip_suffix('+') {
            grp.intern(name.trim(), false)
        } else if let Some(name) = t.strip_suffix('-') {
            grp.intern(name.trim(), true)
        } else {
            grp.parse_word(t)
        }
    }
}

/// Label parser for a table group: element names, optionally with a
/// parity suffix that must match.
pub fn table_label(grp: &ParityGroup) -> impl FnMut(&str) -> Result<usize> + '_ {
    move |t: &str| {
        let (name, sign) = match t.strip_suffix('+') {
            Some(n) => (n, Some(false)),
            None => match t.strip_suffix('-') {
                Some(n) => (n, Some(true)),
                None => (t, None),
            },
        };
        let i = grp
            .index_of(name.trim())
            .ok_or_else(|| Error::Parse(alloc::format!("unknown group element `{name}`")))?;
        if sign.is_some_and(|odd| odd != grp.is_odd(&i)) {
            return Err(Error::Invalid(alloc::format!("`{t}` has the wrong parity")));
        }
        Ok(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free() -> FreeParityGroup {
        FreeParityGroup::new()
    }

    #[test]
    fn twist_example() {
        let g = ParityGroup::c2_odd();
        let outer = AssocPhiElem::new(alloc::vec![0], alloc::vec![1]).unwrap();
        let inner = AssocPhiElem::new(alloc::vec![0, 1], alloc::vec![0, 0]).unwrap();
        let got = operad_compose(&g, &outer, &[inner]).unwrap();
        assert_eq!(got, AssocPhiElem::new(alloc::vec![1, 0], alloc::vec![1, 1]).unwrap());
    }

    #[test]
    fn operad_units() {
        let g = ParityGroup::c4_q();
        let u = operad_unit(&g);
        for a in all_operations(3, &[0, 1, 2, 3]) {
            assert_eq!(operad_compose(&g, &u, core::slice::from_ref(&a)).unwrap(), a);
            assert_eq!(operad_compose(&g, &a, &[u.clone(), u.clone(), u.clone()]).unwrap(), a);
        }
        assert!(operad_compose(&g, &u, &[]).is_err());
    }

    #[test]
    fn literal_roundtrip() {
        let mut grp = free();
        let s = "(psi; (5<2<4; g11+,g12-,g13+), (), (1; g31+), (6<3; g41-,g42+))";
        let (name, f) = parse_env(s, free_label(&mut grp)).unwrap();
        assert_eq!(name, "psi");
        assert_eq!((f.src(), f.dst()), (6, 4));
        assert_eq!(f.alpha(), &[2, 0, 3, 0, 0, 3]);
        let out = format_env(&name, &f, |w| grp.render(w));
        assert_eq!(out, "(psi; (5<2<4; g11, g12, g13), (), (1; g31), (6<3; g41, g42))");
        let (_, again) = parse_env(&out, free_label(&mut grp)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn malformed_literals() {
        let mut grp = free();
        assert!(parse_env("(a; (1<1; x+,y+))", free_label(&mut grp)).is_err());
        assert!(parse_env("(a; (2; x+))", free_label(&mut grp)).is_err());
        assert!(parse_env("(a; (1; x+, y+))", free_label(&mut grp)).is_err());
        assert!(parse_env("a; (1; x+)", free_label(&mut grp)).is_err());
    }

    #[test]
    fn sum_of_cofaces() {
        let k = ParityGroup::trivial();
        let d0 = Whiskered::Map(TsMorphism { ord: OrdMap::face(1, 0).unwrap(), g: crate::gpar::wreath_identity(&k, 0) });
        let Whiskered::Map(s) = monoidal_sum(&d0, &d0) else { panic!() };
        assert_eq!(s.ord, OrdMap::new(3, &[1, 3]).unwrap());
        assert_eq!(monoidal_sum(&d0, &Whiskered::FromEmpty { dst: 0 }), d0);
        assert_eq!(monoidal_sum(&Whiskered::FromEmpty { dst: 0 }, &d0), d0);
    }

    #[test]
    fn shapes_count() {
        for m in 0..=4 {
            for n in 0..=4 {
                let expected = env_hom_count(m, n, 1) as usize;
                assert_eq!(all_env_shapes(m, n).len(), expected, "{m} → {n}");
            }
        }
    }
}
